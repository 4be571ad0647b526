#include "doctest.h"

#include "daft/moments.hpp"
#include "test_util.hpp"

using namespace daft;

namespace {

AtomicMeasure single(double theta, CMatrix w) {
    AtomicMeasure mu;
    mu.p = w.rows();
    mu.atoms.push_back({theta, std::move(w)});
    return mu;
}

// Equally spaced atoms of weight 1/Q: exact discretization of the Lebesgue density for low degrees.
AtomicMeasure uniform_measure(std::size_t Q) {
    AtomicMeasure mu;
    for (std::size_t k = 0; k < Q; ++k)
        mu.atoms.push_back({2 * kPi * static_cast<double>(k) / static_cast<double>(Q),
                            CMatrix::scalar(1.0 / static_cast<double>(Q))});
    return mu;
}

}  // namespace

TEST_CASE("trig_moment examples") {
    auto mu = single(0.0, CMatrix::scalar(0.7));
    for (int k = 0; k < 5; ++k) CHECK(std::abs(trig_moment(mu, k)(0, 0) - 0.7) < 1e-15);
    AtomicMeasure two;
    two.atoms = {{0.0, CMatrix::scalar(0.5)}, {kPi, CMatrix::scalar(0.5)}};
    CHECK(std::abs(trig_moment(two, 0)(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(trig_moment(two, 1)(0, 0)) < 1e-15);
    CHECK(std::abs(trig_moment(two, 2)(0, 0) - 1.0) < 1e-15);
    AtomicMeasure empty;
    CHECK(trig_moment(empty, 3).max_abs() == 0.0);
}

TEST_CASE("daf_from_measure examples") {
    CMatrix w{{1.0, 0.5}, {0.5, 2.0}};
    double th = 0.9;
    auto mu = single(th, w);
    cd k1 = kSqrt2 * std::exp(cd(0, -th)) - kI, k2 = kSqrt2 * std::exp(cd(0, th)) + kI;
    CHECK(dist(daf_from_measure(mu, 2, 3), 2.0 * std::pow(k1, 2) * std::pow(k2, 3) * w) < 1e-12);

    // uniform density oracle: (1/pi) int (sqrt2 e^{-it} - i)^m (sqrt2 e^{it} + i)^n dt
    auto u = uniform_measure(64);
    auto oracle = [](int m, int n) {
        return 2.0 * testutil::mean_over_circle(
                         [&](double t) {
                             return CMatrix::scalar(std::pow(kSqrt2 * std::exp(cd(0, -t)) - kI, m) *
                                                    std::pow(kSqrt2 * std::exp(cd(0, t)) + kI, n));
                         },
                         512)(0, 0);
    };
    CHECK(std::abs(daf_from_measure(u, 0, 0)(0, 0) - 2.0) < 1e-13);
    CHECK(std::abs(daf_from_measure(u, 1, 0)(0, 0) + 2.0 * kI) < 1e-13);
    CHECK(std::abs(daf_from_measure(u, 0, 1)(0, 0) - 2.0 * kI) < 1e-13);
    CHECK(std::abs(daf_from_measure(u, 1, 1)(0, 0) - 6.0) < 1e-13);
    CHECK(std::abs(oracle(1, 1) - 6.0) < 1e-12);
    CHECK(std::abs(daf_from_measure(u, 3, 2)(0, 0) - oracle(3, 2)) < 1e-11);

    auto r = testutil::random_measure(4, 2);
    CHECK(dist(daf_from_measure(r, 0, 0), 2.0 * trig_moment(r, 0)) < 1e-14);
}

TEST_CASE("measure grids are DAF, symmetric, positive, and extend to negative indices") {
    for (int trial = 0; trial < 6; ++trial) {
        auto mu = testutil::random_measure(1 + trial % 5, 1 + trial % 3);
        auto g = grid_from_measure(mu, 11, 11);
        CHECK(cr_residual(g) < 1e-10 * std::max(1.0, g.max_norm()));
        CHECK(symmetry_residual(g) < 1e-10 * std::max(1.0, g.max_norm()));
        for (std::size_t K = 0; K <= 5; ++K) CHECK(psd_check(finite_section(g, K)).psd);
        // negative indices
        double worst = 0;
        for (int m = -4; m < 4; ++m)
            for (int n = -4; n < 4; ++n) {
                CMatrix r = daf_from_measure(mu, m, n) + kI * daf_from_measure(mu, m + 1, n) -
                            kI * daf_from_measure(mu, m, n + 1) - daf_from_measure(mu, m + 1, n + 1);
                worst = std::max(worst, r.max_abs());
            }
        CHECK(worst < 1e-11);
    }
}

TEST_CASE("f_row_from_moments and moments_from_f_row") {
    MomentSequence delta{CMatrix::scalar(1.3)};
    for (int k = 1; k < 6; ++k) delta.push_back(CMatrix::scalar(0.0));
    for (std::size_t m = 0; m < 6; ++m)
        CHECK(std::abs(f_row_from_moments(delta, m)(0, 0) - 2.0 * std::pow(-kI, static_cast<int>(m)) * 1.3) < 1e-13);

    MomentSequence Ms;
    for (int k = 0; k < 8; ++k) Ms.push_back(testutil::random_matrix(2, 2));
    std::vector<CMatrix> row;
    for (std::size_t m = 0; m < 8; ++m) row.push_back(f_row_from_moments(Ms, m));
    for (std::size_t m = 0; m < 8; ++m) CHECK(dist(moments_from_f_row(row, m), Ms[m]) < 1e-12);

    CMatrix w = CMatrix::scalar(0.8);
    auto mu = single(0.0, w);
    auto Mu = moment_sequence(mu, 3);
    CHECK(std::abs(f_row_from_moments(Mu, 1)(0, 0) - 2.0 * 0.8 * (kSqrt2 - kI)) < 1e-14);
    CHECK_THROWS_AS(f_row_from_moments(Mu, 7), Error);

    // the row of a measure grid matches the moment formula
    auto r = testutil::random_measure(3, 2);
    auto Mr = moment_sequence(r, 9);
    for (std::size_t m = 0; m <= 9; ++m)
        CHECK(dist(f_row_from_moments(Mr, m), daf_from_measure(r, static_cast<int>(m), 0)) < 1e-11);
}

TEST_CASE("l_matrix") {
    CHECK(dist(l_matrix(0, 1), CMatrix::scalar(1.0)) < 1e-15);
    CMatrix L1 = l_matrix(1, 1);
    CHECK(dist(L1, CMatrix{{1.0, 0.0}, {kI / kSqrt2, 1.0 / kSqrt2}}) < 1e-15);
    CMatrix L = l_matrix(6, 1);
    for (int s = 0; s < 20; ++s) {
        double t = testutil::uniform(0, 2 * kPi);
        CMatrix v(7, 1), e(7, 1);
        for (int k = 0; k <= 6; ++k) {
            v(k, 0) = std::pow(kSqrt2 * std::exp(cd(0, -t)) - kI, k);
            e(k, 0) = std::exp(cd(0, -k * t));
        }
        CHECK(dist(L * v, e) < 1e-12);
    }
    CMatrix L2 = l_matrix(2, 3);
    CHECK(L2.rows() == 9);
}

TEST_CASE("toeplitz correspondence") {
    auto mu = single(0.0, CMatrix::scalar(1.0));
    auto g = grid_from_measure(mu, 4, 4);
    CMatrix T = toeplitz_from_daf(finite_section(g, 4), 1);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(T(i, j) - 1.0) < 1e-12);

    CHECK(toeplitz_from_daf(CMatrix::zeros(3, 3), 1).max_abs() == 0.0);

    auto r = testutil::random_measure(3, 1);
    auto gr = grid_from_measure(r, 4, 4);
    CMatrix F = finite_section(gr, 4);
    CMatrix Tr = toeplitz_from_daf(F, 1);
    CHECK(dist(Tr, toeplitz_from_moments(moment_sequence(r, 4), 4)) < 1e-11);
    CHECK(psd_check(F).psd);
    CHECK(psd_check(Tr).psd);
    CMatrix Fp = F - 0.2 * CMatrix::identity(5);
    CHECK_FALSE(psd_check(Fp).psd);
    CHECK_FALSE(psd_check(toeplitz_from_daf(Fp, 1)).psd);
    CHECK(inertia(Fp) == inertia(toeplitz_from_daf(Fp, 1)));
    CHECK(dist(daf_from_toeplitz(Tr, 1), F) < 1e-11);
    CHECK_THROWS_AS(toeplitz_from_daf(CMatrix::zeros(5, 5), 2), Error);

    // block case
    auto rb = testutil::random_measure(4, 2);
    auto gb = grid_from_measure(rb, 3, 3);
    CMatrix Fb = finite_section(gb, 3);
    CHECK(dist(toeplitz_from_daf(Fb, 2), toeplitz_from_moments(moment_sequence(rb, 3), 3)) < 1e-11);
}

TEST_CASE("one_step_fill") {
    auto r = one_step_fill(CMatrix::scalar(2.0), 1, CMatrix::scalar(2.0 * (kSqrt2 - kI)));
    CHECK(r.classification.psd);
    auto mu = single(0.0, CMatrix::scalar(1.0));
    CHECK(dist(r.F, finite_section(grid_from_measure(mu, 1, 1), 1)) < 1e-13);
    CHECK_FALSE(one_step_fill(CMatrix::scalar(2.0), 1, CMatrix::scalar(100.0)).classification.psd);
    CHECK(one_step_fill(CMatrix::scalar(0.0), 1, CMatrix::scalar(0.0)).classification.psd);

    // continuation of a random measure stays PSD
    auto rm = testutil::random_measure(4, 1);
    auto g = grid_from_measure(rm, 4, 4);
    auto ext = one_step_fill(finite_section(g, 3), 1, g.at(4, 0));
    CHECK(dist(ext.F, finite_section(g, 4)) < 1e-10);
    CHECK(ext.classification.psd);

    CMatrix bad{{1.0, 2.0}, {2.0, 7.0}};
    CHECK_THROWS_AS(one_step_fill(bad, 1, CMatrix::scalar(0.0)), Error);
}

TEST_CASE("herglotz_eval and phi coefficients") {
    auto mu = single(0.0, CMatrix::scalar(1.0));
    CMatrix X0 = CMatrix::zeros(1, 1);
    for (cd z : {cd(0.1, 0.2), cd(-0.5, 0.3), cd(0.0, -0.7)})
        CHECK(std::abs(herglotz_eval(mu, X0, z)(0, 0) - (1.0 + z) / (1.0 - z)) < 1e-13);
    auto r = testutil::random_measure(3, 2);
    CMatrix X = testutil::random_hermitian(2);
    CHECK(dist(herglotz_eval(r, X, 0.0), trig_moment(r, 0) + kI * X) < 1e-13);
    CHECK_THROWS_AS(herglotz_eval(mu, X0, 1.0), Error);

    auto ph = phi_coeffs_from_measure(mu, X0, 6);
    std::vector<CMatrix> row;
    for (int m = 0; m <= 6; ++m) row.push_back(CMatrix::scalar(2.0 * std::pow(kSqrt2 - kI, m)));
    auto bg = boundary_generating(row, X0, 6);
    for (std::size_t k = 0; k <= 6; ++k) CHECK(dist(ph.coeffs[k], bg.coeffs[k]) < 1e-12);
    CHECK(std::abs(ph.coeffs[1](0, 0) - 2.0 * kSqrt2) < 1e-14);
}

TEST_CASE("phi coefficients: three routes agree for random measures") {
    auto r = testutil::random_measure(4, 2);
    CMatrix X = testutil::random_hermitian(2);
    auto ph = phi_coeffs_from_measure(r, X, 7);
    // boundary row route
    std::vector<CMatrix> row;
    for (int m = 0; m <= 7; ++m) row.push_back(daf_from_measure(r, m, 0));
    auto bg = boundary_generating(row, X, 7);
    // Taylor coefficients of herglotz(sigma(.)) by contour quadrature
    auto tq = taylor_by_quadrature([&](cd z) { return herglotz_eval(r, X, sigma(z)); }, 7, 0.1, 256);
    for (std::size_t k = 0; k <= 7; ++k) {
        CHECK(dist(ph.coeffs[k], bg.coeffs[k]) < 1e-11);
        CHECK(dist(ph.coeffs[k], tq.coeffs[k]) < 1e-7);
    }
}

TEST_CASE("kernel_eval_measure") {
    auto r = testutil::random_measure(3, 2);
    CHECK(dist(kernel_eval_measure(r, 0.0, 0.0), 2.0 * trig_moment(r, 0)) < 1e-14);
    cd l{0.03, 0.02}, n{-0.04, 0.01};
    CHECK(dist(kernel_eval_measure(r, l, n), kernel_eval_measure(r, n, l).adjoint()) < 1e-13);
    // partial sums of the grid
    auto g = grid_from_measure(r, 30, 30);
    CMatrix sum = CMatrix::zeros(2, 2);
    for (int m = 0; m <= 30; ++m)
        for (int k = 0; k <= 30; ++k)
            sum += std::pow(l, m) * std::pow(std::conj(n), k) * g.at(m, k);
    CHECK(dist(sum, kernel_eval_measure(r, l, n)) < 1e-10);
}

TEST_CASE("growth bounds") {
    auto top = single(kPi / 2, CMatrix::scalar(1.0));
    auto rt = growth_bounds_check(top, 8);
    CHECK(rt.ok);
    CHECK(std::abs(rt.max_upper_ratio - 1.0) < 1e-10);
    auto bot = single(3 * kPi / 2, CMatrix::scalar(1.0));
    auto rb = growth_bounds_check(bot, 8);
    CHECK(rb.ok);
    CHECK(std::abs(rb.min_lower_ratio - 1.0) < 1e-10);
    auto u = growth_bounds_check(uniform_measure(64), 3);
    CHECK(u.ok);
    CHECK(std::abs(u.diagonal[1] - 6.0) < 1e-12);

    // a grid breaking the upper bound is reported
    auto g = grid_from_measure(top, 3, 3);
    g.at(2, 2) = g.at(2, 2) * 2.0;
    CHECK_FALSE(growth_bounds_check(g, 3).ok);
}
