#pragma once

#include "daft/lattice.hpp"
#include "daft/realization.hpp"

namespace daft {

// w(lambda) = d + c (lambda I - a)^{-1} b, spectrum of a in the open unit disk.
struct SpectralFactor {
    CMatrix a, b, c, d;
    std::size_t ell() const { return a.rows(); }
    std::size_t p() const { return d.rows(); }
    void validate() const;
};

CMatrix factor_eval(const SpectralFactor& w, cd lambda, const Tolerances& tol = {});
// R(lambda) = w(lambda) w(1/conj(lambda))^*
CMatrix density_eval(const SpectralFactor& w, cd lambda, const Tolerances& tol = {});

CMatrix stein_solve(const CMatrix& a, const CMatrix& b, const Tolerances& tol = {});
StateSpace density_realization(const SpectralFactor& w, const Tolerances& tol = {});
CMatrix fourier_coeffs_factor(const SpectralFactor& w, int k, const Tolerances& tol = {});
CMatrix cara_from_factor(const SpectralFactor& w, cd lambda, const Tolerances& tol = {});

CMatrix f_row_from_density(const StateSpace& Sden, const CMatrix& P, int m,
                           const Tolerances& tol = {});
CMatrix f_row_from_factor(const SpectralFactor& w, int m, const Tolerances& tol = {});
// Closed form when d = c a^{-1} b.
CMatrix f_row_from_factor_inner(const SpectralFactor& w, int m, const Tolerances& tol = {});

struct DilationCalculus {
    CMatrix T, Cout;
};

CMatrix dilation_extend(const DilationCalculus& dc, int m, int n, const Tolerances& tol = {});
DilationCalculus dilation_for_factor(const SpectralFactor& w, const Tolerances& tol = {});
CMatrix symmetric_extension_from_factor(const SpectralFactor& w, int m, int n,
                                         const Tolerances& tol = {});
DafGrid symmetric_extension_grid(const SpectralFactor& w, std::size_t M, std::size_t N,
                                 const Tolerances& tol = {});

struct FactorKyp {
    StateSpace phi;  // realization of the Caratheodory function
    KypCertificate cert;
};

FactorKyp kyp_certificate_for_factor(const SpectralFactor& w, const Tolerances& tol = {});

}  // namespace daft
