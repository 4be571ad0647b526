#pragma once

#include "daft/numeric.hpp"

namespace daft {

struct DisplacementData {
    CMatrix V;
    CMatrix J;
    double residual = 0.0;
};

CMatrix shift_matrix(std::size_t N, std::size_t p);
CMatrix signature_matrix(std::size_t p);

// F + iZ^*F - iFZ - Z^*FZ
CMatrix displacement(const CMatrix& F, std::size_t p);
DisplacementData displacement_decompose(const CMatrix& F, std::size_t p, const Tolerances& tol = {});
std::size_t displacement_rank(const CMatrix& F, std::size_t p, const Tolerances& tol = {});

// Theta for mu0 = 1.
std::function<CMatrix(cd)> theta(const CMatrix& F, std::size_t p, const Tolerances& tol = {});
double theta_kernel_check(const CMatrix& F, std::size_t p, const std::function<CMatrix(cd)>& Th,
                          cd lambda, cd nu, const Tolerances& tol = {});

}  // namespace daft
