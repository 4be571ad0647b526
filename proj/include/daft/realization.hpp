#pragma once

#include <array>

#include "daft/moebius.hpp"
#include "daft/numeric.hpp"

namespace daft {

enum class Center { Infinity, Zero };

// Center Infinity: D + C (lambda I - A)^{-1} B.  Center Zero: D + lambda C (I - lambda A)^{-1} B.
struct StateSpace {
    CMatrix A, B, C, D;
    Center center = Center::Infinity;

    std::size_t states() const { return A.rows(); }
    void validate() const;
};

CMatrix eval(const StateSpace& S, cd lambda, const Tolerances& tol = {});

std::size_t observability_rank(const CMatrix& C, const CMatrix& A, const Tolerances& tol = {});
std::size_t controllability_rank(const CMatrix& A, const CMatrix& B, const Tolerances& tol = {});
bool is_minimal(const StateSpace& S, const Tolerances& tol = {});

StateSpace product(const StateSpace& S1, const StateSpace& S2);
StateSpace recenter_zero(const StateSpace& S, const Tolerances& tol = {});

struct Triple {
    CMatrix A, B, C;
};
// (A^{-1}, A^{-1}B, C(I+iA)^{-1}) stored as state, input, output maps.
Triple inverse_triple(const StateSpace& S, const Tolerances& tol = {});

struct LosslessCertificate {
    CMatrix H;
    std::array<double, 3> residuals{};  // A vs H^{-1}A^{-*}H, D+D* vs -CH^{-1}C*, B vs -AH^{-1}C*
    bool ok(double t) const { return residuals[0] <= t && residuals[1] <= t && residuals[2] <= t; }
};

LosslessCertificate lossless_check(const StateSpace& S, const CMatrix& H, const Tolerances& tol = {});
std::function<CMatrix(cd)> cara_from_unitary(const CMatrix& C, const CMatrix& A, const CMatrix& H,
                                             const CMatrix& D, const Tolerances& tol = {});
double lossless_kernel_check(const StateSpace& S, const CMatrix& H, cd lambda, cd nu,
                             const Tolerances& tol = {});

StateSpace cayley_schur(const StateSpace& S, const CMatrix& H, const Tolerances& tol = {});

struct KypCertificate {
    CMatrix P, L, W;
};

std::array<double, 3> kyp_verify(const StateSpace& S, const KypCertificate& cert);
double kyp_kernel_decomposition(const StateSpace& S, const KypCertificate& cert, cd lambda, cd nu,
                                const Tolerances& tol = {});

CMatrix riesz_projection(const CMatrix& A, std::size_t nodes = 256, const Tolerances& tol = {});
CMatrix fourier_coeffs_realization(const StateSpace& S, const CMatrix& P, int u,
                                   const Tolerances& tol = {});

StateSpace phiL_realization_from_phi(const StateSpace& S, const Tolerances& tol = {});
CMatrix f_row_from_PhiL_realization(const StateSpace& S0, int m, const Tolerances& tol = {});
CMatrix f_row_from_phiL_realization(const StateSpace& S, int m, const Tolerances& tol = {});

CMatrix f_row_lossless(const CMatrix& C, const CMatrix& A, const CMatrix& H, int m,
                       const Tolerances& tol = {});
TruncatedSeries phi_coeffs_lossless(const CMatrix& C, const CMatrix& A, const CMatrix& H,
                                    std::size_t order, const Tolerances& tol = {});

// Minimal polynomial degree via linear dependence of I, A, A^2, ...
std::size_t minimal_polynomial_degree(const CMatrix& A, const Tolerances& tol = {});
std::vector<cd> moment_expansion_coeffs(const CMatrix& A, int n, const Tolerances& tol = {});

// S with S A1 = A2^* S, S B1 = C2^*, C1 = B2^* S.
CMatrix symmetric_similarity_check(const StateSpace& S1, const StateSpace& S2,
                                   const Tolerances& tol = {});

}  // namespace daft
