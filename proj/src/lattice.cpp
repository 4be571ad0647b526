#include "daft/lattice.hpp"

#include <cmath>

namespace daft {

namespace {
const cd kAlphaPlus{0.5, 0.5};
const cd kAlphaMinus{0.5, -0.5};
}  // namespace

DafGrid::DafGrid(std::size_t p, std::size_t q, std::size_t M, std::size_t N)
    : p_(p), q_(q), M_(M), N_(N), vals_((M + 1) * (N + 1), CMatrix(p, q)) {}

std::vector<CMatrix> DafGrid::row() const {
    std::vector<CMatrix> r;
    for (std::size_t m = 0; m <= M_; ++m) r.push_back(at(m, 0));
    return r;
}

std::vector<CMatrix> DafGrid::col() const {
    std::vector<CMatrix> c;
    for (std::size_t n = 0; n <= N_; ++n) c.push_back(at(0, n));
    return c;
}

double DafGrid::max_norm() const {
    double m = 0;
    for (const auto& v : vals_) m = std::max(m, v.norm_inf());
    return m;
}

DafGrid grid_from_function(std::size_t p, std::size_t q, std::size_t M, std::size_t N,
                           const std::function<CMatrix(int, int)>& f) {
    DafGrid g(p, q, M, N);
    for (std::size_t m = 0; m <= M; ++m)
        for (std::size_t n = 0; n <= N; ++n) {
            CMatrix v = f(static_cast<int>(m), static_cast<int>(n));
            if (v.rows() != p || v.cols() != q) throw Error(ErrorKind::DimMismatch, "grid value block size");
            g.at(m, n) = std::move(v);
        }
    return g;
}

double cr_residual(const DafGrid& g) {
    if (g.M() < 1 || g.N() < 1) throw Error(ErrorKind::TooSmall, "CR residual needs a 2x2 grid");
    double worst = 0;
    for (std::size_t m = 0; m < g.M(); ++m)
        for (std::size_t n = 0; n < g.N(); ++n) {
            CMatrix r = g.at(m, n) + kI * g.at(m + 1, n) - kI * g.at(m, n + 1) - g.at(m + 1, n + 1);
            worst = std::max(worst, r.norm_inf());
        }
    return worst;
}

double symmetry_residual(const DafGrid& g) {
    std::size_t K = std::min(g.M(), g.N());
    double worst = 0;
    for (std::size_t m = 0; m <= K; ++m)
        for (std::size_t n = 0; n <= K; ++n) worst = std::max(worst, dist(g.at(m, n), g.at(n, m).adjoint()));
    return worst;
}

CMatrix finite_section(const DafGrid& g, std::size_t K) {
    if (K > g.M() || K > g.N()) throw Error(ErrorKind::IndexRange, "section larger than grid");
    CMatrix F((K + 1) * g.p(), (K + 1) * g.q());
    for (std::size_t m = 0; m <= K; ++m)
        for (std::size_t n = 0; n <= K; ++n) F.set_block(m * g.p(), n * g.q(), g.at(m, n));
    return F;
}

DafGrid extend_from_boundary(const std::vector<CMatrix>& row, const std::vector<CMatrix>& col,
                             const Tolerances& tol) {
    if (row.empty() || col.empty()) throw Error(ErrorKind::TooSmall, "empty boundary");
    const CMatrix& c0 = row[0];
    for (const auto& v : row)
        if (v.rows() != c0.rows() || v.cols() != c0.cols()) throw Error(ErrorKind::DimMismatch, "row blocks");
    for (const auto& v : col)
        if (v.rows() != c0.rows() || v.cols() != c0.cols()) throw Error(ErrorKind::DimMismatch, "column blocks");
    if (dist(row[0], col[0]) > tol.eq_tol * std::max(1.0, row[0].max_abs()))
        throw Error(ErrorKind::CornerMismatch, "row[0] differs from col[0]");
    DafGrid g(c0.rows(), c0.cols(), row.size() - 1, col.size() - 1);
    for (std::size_t m = 0; m < row.size(); ++m) g.at(m, 0) = row[m];
    for (std::size_t n = 1; n < col.size(); ++n) g.at(0, n) = col[n];
    for (std::size_t m = 0; m < g.M(); ++m)
        for (std::size_t n = 0; n < g.N(); ++n)
            g.at(m + 1, n + 1) = g.at(m, n) + kI * g.at(m + 1, n) - kI * g.at(m, n + 1);
    return g;
}

std::vector<cd> daf_power_series(int m, int n, int U) {
    if (m < 0 || n < 0 || U < 0) throw Error(ErrorKind::IndexRange, "daf_power needs m, n, u >= 0");
    const std::size_t L = static_cast<std::size_t>(U) + 1;
    std::vector<cd> s(L, 0.0);
    s[0] = 1.0;
    auto mul_linear = [&](cd a) {  // s *= (1 + a t)
        for (std::size_t k = L; k-- > 1;) s[k] += a * s[k - 1];
    };
    auto div_linear = [&](cd a) {  // s /= (1 + a t)
        for (std::size_t k = 1; k < L; ++k) s[k] -= a * s[k - 1];
    };
    for (int i = 0; i < m; ++i) mul_linear(1.0);
    for (int i = 0; i < n; ++i) {
        mul_linear(kAlphaPlus);
        div_linear(kAlphaMinus);
    }
    return s;
}

cd daf_power(int m, int n, int u) { return daf_power_series(m, n, u).back(); }

CMatrix odot_resolvent(const CMatrix& A, int m, int n, const Tolerances& tol) {
    if (!A.square()) throw Error(ErrorKind::DimMismatch, "odot_resolvent needs a square matrix");
    const std::size_t N = A.rows();
    CMatrix Im = CMatrix::identity(N) + kAlphaMinus * A;
    CMatrix inv;
    try {
        inv = inverse(Im, tol);
    } catch (const Error&) {
        throw Error(ErrorKind::SpectrumClash, "I + alpha_- A singular");
    }
    CMatrix r = matpow(shift(A, 1.0), m);
    CMatrix ratio = (CMatrix::identity(N) + kAlphaPlus * A) * inv;
    return r * matpow(ratio, n);
}

RationalDafValue rational_daf_eval(const CMatrix& D, const CMatrix& C, const CMatrix& A,
                                   const CMatrix& B, int m, int n, int order) {
    RationalDafValue out;
    out.value = D;
    if (order < 1) return out;
    auto z = daf_power_series(m, n, order);
    CMatrix Ak = B;  // A^{u-1} B
    for (int u = 1; u <= order; ++u) {
        out.value += z[static_cast<std::size_t>(u)] * (C * Ak);
        Ak = A * Ak;
    }
    if (A.rows() > 0 && spectral_radius_proxy(A, 32) >= kSqrt2 * 1.05) out.divergence_warning = true;
    return out;
}

double pair_condition_residual(const CMatrix& A1, const CMatrix& A2) {
    CMatrix I = CMatrix::identity(A1.rows());
    return (I + kI * A1 - kI * A2 - A1 * A2).norm_inf();
}

CMatrix a2_from_a1(const CMatrix& A1, const Tolerances& tol) {
    CMatrix I = CMatrix::identity(A1.rows());
    return lu_solve(shift(A1, kI), I + kI * A1, tol);
}

PairValue pair_daf_eval(const OperatorPair& pr, int m, int n, const Tolerances& tol) {
    PairValue out;
    out.condition_residual = pair_condition_residual(pr.A1, pr.A2);
    out.exact = out.condition_residual <= tol.eq_tol * std::max(1.0, pr.A1.norm_inf() * pr.A2.norm_inf());
    out.value = pr.C * matpow(pr.A1, m) * matpow(pr.A2, n) * pr.B;
    return out;
}

DafGrid pair_grid(const OperatorPair& pr, std::size_t M, std::size_t N) {
    DafGrid g(pr.C.rows(), pr.B.cols(), M, N);
    CMatrix left = pr.C;
    for (std::size_t m = 0; m <= M; ++m) {
        CMatrix right = pr.B;
        for (std::size_t n = 0; n <= N; ++n) {
            g.at(m, n) = left * right;
            right = pr.A2 * right;
        }
        left = left * pr.A1;
    }
    return g;
}

}  // namespace daft
