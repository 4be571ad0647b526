#pragma once

#include "daft/numeric.hpp"

namespace daft {

// Values f(m,n), 0<=m<=M, 0<=n<=N, each a p x q block.
class DafGrid {
public:
    DafGrid() = default;
    DafGrid(std::size_t p, std::size_t q, std::size_t M, std::size_t N);

    std::size_t p() const noexcept { return p_; }
    std::size_t q() const noexcept { return q_; }
    std::size_t M() const noexcept { return M_; }
    std::size_t N() const noexcept { return N_; }

    CMatrix& at(std::size_t m, std::size_t n) { return vals_[m * (N_ + 1) + n]; }
    const CMatrix& at(std::size_t m, std::size_t n) const { return vals_[m * (N_ + 1) + n]; }

    std::vector<CMatrix> row() const;  // f(m,0)
    std::vector<CMatrix> col() const;  // f(0,n)
    double max_norm() const;

private:
    std::size_t p_ = 0, q_ = 0, M_ = 0, N_ = 0;
    std::vector<CMatrix> vals_;
};

DafGrid grid_from_function(std::size_t p, std::size_t q, std::size_t M, std::size_t N,
                           const std::function<CMatrix(int, int)>& f);

double cr_residual(const DafGrid& g);

// max ||f(m,n) - f(n,m)^*|| over the common square
double symmetry_residual(const DafGrid& g);

// Square section (f(m,n))_{m,n<=K}, size (K+1)p
CMatrix finite_section(const DafGrid& g, std::size_t K);

DafGrid extend_from_boundary(const std::vector<CMatrix>& row, const std::vector<CMatrix>& col,
                             const Tolerances& tol = {});

cd daf_power(int m, int n, int u);
// Series sum_{u<=U} t^u z^{(u)}
std::vector<cd> daf_power_series(int m, int n, int U);

CMatrix odot_resolvent(const CMatrix& A, int m, int n, const Tolerances& tol = {});

struct RationalDafValue {
    CMatrix value;
    bool divergence_warning = false;
};

RationalDafValue rational_daf_eval(const CMatrix& D, const CMatrix& C, const CMatrix& A,
                                   const CMatrix& B, int m, int n, int order);

struct OperatorPair {
    CMatrix A1, A2, C, B;
};

double pair_condition_residual(const CMatrix& A1, const CMatrix& A2);
CMatrix a2_from_a1(const CMatrix& A1, const Tolerances& tol = {});

struct PairValue {
    CMatrix value;
    double condition_residual = 0.0;
    bool exact = true;
};

PairValue pair_daf_eval(const OperatorPair& pr, int m, int n, const Tolerances& tol = {});
DafGrid pair_grid(const OperatorPair& pr, std::size_t M, std::size_t N);

}  // namespace daft
