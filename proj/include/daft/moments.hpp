#pragma once

#include "daft/lattice.hpp"
#include "daft/moebius.hpp"
#include "daft/numeric.hpp"

namespace daft {

struct Atom {
    double theta = 0.0;
    CMatrix weight;
};

// dM = 2 pi sum_j W_j delta_{theta_j}
struct AtomicMeasure {
    std::size_t p = 1;
    std::vector<Atom> atoms;
    void validate(const Tolerances& tol = {}) const;
};

using MomentSequence = std::vector<CMatrix>;

CMatrix trig_moment(const AtomicMeasure& mu, int k);
MomentSequence moment_sequence(const AtomicMeasure& mu, std::size_t K);

CMatrix daf_from_measure(const AtomicMeasure& mu, int m, int n);
DafGrid grid_from_measure(const AtomicMeasure& mu, std::size_t M, std::size_t N);

CMatrix f_row_from_moments(const MomentSequence& Ms, std::size_t m);
CMatrix moments_from_f_row(const std::vector<CMatrix>& row, std::size_t m);

CMatrix l_matrix(std::size_t N, std::size_t p);
CMatrix toeplitz_from_daf(const CMatrix& F, std::size_t p);
CMatrix daf_from_toeplitz(const CMatrix& T, std::size_t p);
CMatrix toeplitz_from_moments(const MomentSequence& Ms, std::size_t N);

// CR residual of the blocks of a square section.
double section_structure_residual(const CMatrix& F, std::size_t p);

struct OneStepResult {
    CMatrix F;
    PsdResult classification;
};

OneStepResult one_step_fill(const CMatrix& F, std::size_t p, const CMatrix& lambda,
                            const Tolerances& tol = {});

CMatrix herglotz_eval(const AtomicMeasure& mu, const CMatrix& X, cd lambda,
                      const Tolerances& tol = {});
TruncatedSeries phi_coeffs_from_measure(const AtomicMeasure& mu, const CMatrix& X,
                                        std::size_t order);

CMatrix kernel_eval_measure(const AtomicMeasure& mu, cd lambda, cd nu,
                            const Tolerances& tol = {});

struct GrowthReport {
    bool ok = true;
    double m0 = 0.0;                    // trace of M_0
    std::vector<double> diagonal;       // trace f(n,n)
    std::vector<std::string> violations;
    double max_upper_ratio = 0.0;       // max trace f(n,n) / upper bound
    double min_lower_ratio = 0.0;       // min trace f(n,n) / lower bound
};

GrowthReport growth_bounds_check(const DafGrid& g, std::size_t upTo, const Tolerances& tol = {});
GrowthReport growth_bounds_check(const AtomicMeasure& mu, std::size_t upTo,
                                 const Tolerances& tol = {});

}  // namespace daft
