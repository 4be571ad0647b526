#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace daft {

using cd = std::complex<double>;

inline constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr cd kI{0.0, 1.0};

enum class ErrorKind {
    Singular,
    NotHermitian,
    NotPSD,
    PoleAt,
    DimMismatch,
    TooSmall,
    CornerMismatch,
    SpectrumClash,
    IndexRange,
    NotDaf,
    PreconditionFail,
    SpectrumOnCircle,
    NotLossless,
    NotSimilar,
    Unstable,
    NotContraction,
    ParseError,
    AmbiguousSource,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// All thresholds are positive; rank_tol and psd_tol are relative.
struct Tolerances {
    double eq_tol = 1e-10;
    double rank_tol = 1e-9;
    double psd_tol = 1e-9;
};

class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols, cd fill = 0.0);
    CMatrix(std::initializer_list<std::initializer_list<cd>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }
    static CMatrix scalar(cd v) { return CMatrix(1, 1, v); }
    static CMatrix column(const std::vector<cd>& v);
    static CMatrix diag(const std::vector<cd>& v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }
    bool square() const noexcept { return rows_ == cols_; }

    cd& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cd& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    const std::vector<cd>& data() const noexcept { return data_; }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conj() const;

    CMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const CMatrix& b);

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cd s);

    double max_abs() const;
    double norm_inf() const;   // max row sum
    double norm_fro() const;
    cd trace() const;
    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cd> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cd s, CMatrix a);
CMatrix operator*(CMatrix a, cd s);
CMatrix operator/(CMatrix a, cd s);

// A + s*I
CMatrix shift(const CMatrix& a, cd s);
CMatrix hstack(const CMatrix& a, const CMatrix& b);
CMatrix vstack(const CMatrix& a, const CMatrix& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix vec(const CMatrix& a);  // column-major stacking
CMatrix unvec(const CMatrix& v, std::size_t rows, std::size_t cols);
CMatrix hermitian_part(const CMatrix& a);
double dist(const CMatrix& a, const CMatrix& b);  // max |a_ij - b_ij|
CMatrix matpow(const CMatrix& a, int k);           // k < 0 uses the inverse

class LU {
public:
    LU(const CMatrix& a, const Tolerances& tol = {});
    CMatrix solve(const CMatrix& b) const;
    cd det() const;
    double min_pivot_ratio() const noexcept { return min_ratio_; }

private:
    CMatrix lu_;
    std::vector<std::size_t> perm_;
    int sign_ = 1;
    double min_ratio_ = 1.0;
};

CMatrix lu_solve(const CMatrix& a, const CMatrix& b, const Tolerances& tol = {});
CMatrix inverse(const CMatrix& a, const Tolerances& tol = {});

// Numerical rank by Gaussian elimination with complete pivoting.
std::size_t rank(const CMatrix& a, const Tolerances& tol = {});

// Orthonormal basis of the column space (pivoted Gram-Schmidt, reorthogonalized).
CMatrix range_basis(const CMatrix& a, const Tolerances& tol = {});

// Minimum-norm least-squares solution of a x = b for a with full column rank.
CMatrix least_squares(const CMatrix& a, const CMatrix& b, const Tolerances& tol = {});

struct EigResult {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // unitary, columns match values
};

bool is_hermitian(const CMatrix& a, const Tolerances& tol = {});
EigResult hermitian_eig(const CMatrix& a, const Tolerances& tol = {});

struct PsdResult {
    bool psd = true;
    int negatives = 0;
    std::vector<double> eigenvalues;
};

struct Inertia {
    int positive = 0;
    int negative = 0;
    int zero = 0;
    bool operator==(const Inertia&) const = default;
};

PsdResult psd_check(const CMatrix& a, const Tolerances& tol = {});
Inertia inertia(const CMatrix& a, const Tolerances& tol = {});
CMatrix sqrt_psd(const CMatrix& a, const Tolerances& tol = {});

// Gelfand proxy ||A^k||^{1/k}.
double spectral_radius_proxy(const CMatrix& a, int k = 32);

// Trapezoidal mean (1/2pi) * integral over [0, 2pi) with equally spaced nodes.
CMatrix circle_quadrature(const std::function<CMatrix(double)>& g, std::size_t nodes);

double binomial(int n, int k);

}  // namespace daft
