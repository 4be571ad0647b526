#pragma once

#include "daft/lattice.hpp"
#include "daft/numeric.hpp"

namespace daft {

// Coefficient k multiplies lambda^k.
struct TruncatedSeries {
    std::vector<CMatrix> coeffs;
    std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    CMatrix eval(cd lambda) const;
};

// Coefficient (m,n) multiplies lambda^m conj(nu)^n; stored as a grid.
using Kernel2 = DafGrid;

cd sigma(cd lambda, const Tolerances& tol = {});
cd sigma_inv(cd lambda, const Tolerances& tol = {});
cd symmetric_point(cd lambda, const Tolerances& tol = {});

enum class Region { OmegaPlus, OmegaMinus, OmegaZero };
Region region_classify(cd lambda, const Tolerances& tol = {});

// Left series from the row f(m,0); right series from the column f(0,n).
TruncatedSeries boundary_generating(const std::vector<CMatrix>& row, const CMatrix& X,
                                    std::size_t order);
TruncatedSeries boundary_generating_right(const std::vector<CMatrix>& col, const CMatrix& X,
                                          std::size_t order);

Kernel2 kernel_from_boundary(const TruncatedSeries& phiL, const TruncatedSeries& phiR);

// Scalar-series composition helpers.
std::vector<cd> sigma_inv_series(std::size_t order);
std::vector<cd> sigma_series(std::size_t order);
TruncatedSeries compose(const TruncatedSeries& outer, const std::vector<cd>& inner,
                        std::size_t order);

TruncatedSeries characteristic_from_boundary(const TruncatedSeries& Phi, std::size_t order);
TruncatedSeries boundary_from_characteristic(const TruncatedSeries& phi, std::size_t order);

// Taylor coefficients of an analytic function via quadrature on |lambda| = radius.
TruncatedSeries taylor_by_quadrature(const std::function<CMatrix(cd)>& f, std::size_t order,
                                     double radius, std::size_t nodes);

}  // namespace daft
