// Acceptance run: one line per criterion, nonzero exit if any fails.
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "daft/displacement.hpp"
#include "daft/lattice.hpp"
#include "daft/moebius.hpp"
#include "daft/moments.hpp"
#include "daft/realization.hpp"
#include "daft/spectral.hpp"
#include "test_util.hpp"

using namespace daft;
using testutil::random_matrix;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) detail = what;
        ok = ok && cond;
    }
};

struct Worst {
    double v = 0;
    void see(double x) { v = std::max(v, x); }
};

std::string fmt(const char* f, double x) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

// Hermitian but possibly indefinite weights give Hermitian DAF sections of any inertia.
AtomicMeasure signed_measure(std::size_t atoms, std::size_t p, bool indefinite) {
    AtomicMeasure mu = testutil::random_measure(atoms, p);
    if (indefinite)
        for (std::size_t j = 0; j < atoms; j += 2) mu.atoms[j].weight = -1.0 * mu.atoms[j].weight;
    return mu;
}

StateSpace random_minimal(std::size_t N, std::size_t p) {
    StateSpace S{random_matrix(N, N) + CMatrix::identity(N) * 1.5, random_matrix(N, p), random_matrix(p, N),
                 CMatrix(p, p), Center::Infinity};
    S.D = 0.5 * (S.C * lu_solve(S.A, S.B));
    return S;
}

Outcome cr_closure() {
    Outcome o;
    Worst w;
    for (int t = 0; t < 20; ++t) {
        std::size_t atoms = 1 + static_cast<std::size_t>(t) % 5, p = 1 + static_cast<std::size_t>(t) % 3;
        auto g = grid_from_measure(testutil::random_measure(atoms, p), 12, 12);
        w.see(cr_residual(g) / std::max(1.0, g.max_norm()));
    }
    for (int t = 0; t < 10; ++t) {
        auto f = testutil::random_factor(1 + t % 3, 1 + t % 2, true);
        auto g = symmetric_extension_grid(f, 8, 8);
        w.see(cr_residual(g) / std::max(1.0, g.max_norm()));
    }
    o.require(w.v < 1e-10, "CR residual too large");
    o.detail = o.ok ? fmt("max relative CR residual %.2e", w.v) : o.detail + fmt(" (%.2e)", w.v);
    return o;
}

Outcome moment_oracle() {
    Outcome o;
    Worst w;
    for (int t = 0; t < 10; ++t) {
        auto f = testutil::random_factor(1 + t % 3, 1 + t % 2, true);
        auto dc = dilation_for_factor(f);
        for (int m = 0; m <= 10; ++m)
            for (int n = 0; m + n <= 10; ++n) {
                CMatrix v = dilation_extend(dc, m, n);
                w.see(dist(v, testutil::f_oracle(f, m, n)) / std::max(1.0, v.max_abs()));
            }
    }
    o.require(w.v < 1e-7, "dilation values disagree with the quadrature oracle");
    auto pw = testutil::poisson_factor();
    double e0 = std::abs(symmetric_extension_from_factor(pw, 0, 0)(0, 0) - 8.0 / 3.0);
    double e1 = std::abs(symmetric_extension_from_factor(pw, 1, 0)(0, 0) - (4.0 * kSqrt2 / 3.0 - kI * 8.0 / 3.0));
    o.require(e0 < 1e-12 && e1 < 1e-12, "Poisson closed-form values");
    if (o.ok) o.detail = fmt("max relative oracle gap %.2e", w.v) + fmt(", Poisson error %.1e", std::max(e0, e1));
    return o;
}

Outcome toeplitz_equivalence() {
    Outcome o;
    Worst w;
    int indefinite = 0;
    for (int t = 0; t < 50; ++t) {
        std::size_t N = 1 + static_cast<std::size_t>(t) % 5, p = 1 + static_cast<std::size_t>(t) % 2;
        auto mu = signed_measure(N + 2, p, t % 2 == 1);
        CMatrix F = finite_section(grid_from_measure(mu, N, N), N);
        CMatrix T = toeplitz_from_moments(moment_sequence(mu, N), N);
        CMatrix L = l_matrix(N, p);
        double sc = std::max(1.0, F.max_abs());
        w.see(dist(2.0 * T, L * F * L.adjoint()) / sc);
        w.see(dist(daf_from_toeplitz(T, p), F) / sc);
        Inertia iF = inertia(F), iT = inertia(T);
        if (iF.negative > 0) ++indefinite;
        o.require(iF == iT, "inertia of F and T differ at trial " + std::to_string(t));
    }
    o.require(w.v < 1e-10, "congruence residual too large");
    o.require(indefinite > 0, "no indefinite sections were exercised");
    if (o.ok) o.detail = fmt("max relative residual %.2e", w.v) + ", " + std::to_string(indefinite) + " indefinite sections";
    return o;
}

Outcome lossless_pipeline() {
    Outcome o;
    StateSpace S{CMatrix::scalar(1.0), CMatrix::scalar(-2.0), CMatrix::scalar(1.0), CMatrix::scalar(-1.0),
                 Center::Infinity};
    CMatrix H = CMatrix::scalar(0.5);
    auto cert = lossless_check(S, H);
    o.require(cert.ok(1e-15), "lossless residuals");
    Worst w;
    for (int m = 0; m <= 8; ++m)
        w.see(std::abs(f_row_lossless(S.C, S.A, H, m)(0, 0) - 2.0 * std::pow(kSqrt2 - kI, m)));
    auto sch = cayley_schur(S, H);
    for (int k = 0; k < 10; ++k) {
        cd l = testutil::rand_in_disk(0.95);
        w.see(std::abs(eval(sch, l)(0, 0) - l));
    }
    o.require(w.v < 1e-12, "row or Schur values");
    if (o.ok) o.detail = fmt("max error %.1e", w.v);
    return o;
}

Outcome fourier_double_route() {
    Outcome o;
    Worst w, pw;
    for (int t = 0; t < 10; ++t) {
        auto f = testutil::random_factor(1 + t % 3, 1 + t % 2, t % 4 == 0);
        auto Sd = density_realization(f);
        CMatrix P = riesz_projection(Sd.A);
        for (int k = -6; k <= 6; ++k) {
            CMatrix r = fourier_coeffs_factor(f, k);
            w.see(dist(r, fourier_coeffs_realization(Sd, P, k)) / std::max(1.0, r.max_abs()));
        }
    }
    auto poisson = testutil::poisson_factor();
    for (int k = -6; k <= 6; ++k)
        pw.see(std::abs(fourier_coeffs_factor(poisson, k)(0, 0) - (4.0 / 3.0) * std::pow(2.0, -std::abs(k))));
    o.require(w.v < 1e-8, "routes disagree");
    o.require(pw.v < 1e-12, "Poisson coefficients");
    if (o.ok) o.detail = fmt("max route gap %.2e", w.v) + fmt(", Poisson error %.1e", pw.v);
    return o;
}

Outcome stein_riesz() {
    Outcome o;
    Worst stein, idem, block;
    for (int t = 0; t < 10; ++t) {
        auto f = testutil::random_factor(1 + t % 3, 1 + t % 2, false);
        CMatrix X = stein_solve(f.a, f.b);
        CMatrix Q = f.b * f.b.adjoint();
        stein.see(dist(X - f.a * X * f.a.adjoint(), Q) / std::max(1.0, Q.max_abs()));
        auto Sd = density_realization(f);
        CMatrix P = riesz_projection(Sd.A);
        idem.see(dist(P * P, P));
        const std::size_t l = f.ell();
        CMatrix Pe(2 * l, 2 * l);
        Pe.set_block(0, 0, CMatrix::identity(l));
        Pe.set_block(0, l, X);
        block.see(dist(P, Pe));
    }
    CMatrix Pd = riesz_projection(CMatrix::diag({0.5, 2.0}));
    double diagErr = dist(Pd, CMatrix::diag({1.0, 0.0}));
    idem.see(dist(Pd * Pd, Pd));
    o.require(stein.v < 1e-12, "Stein residual");
    o.require(idem.v < 1e-8, "idempotency");
    o.require(diagErr < 1e-12, "diag(1/2, 2) projection");
    o.require(block.v < 1e-8, "block form of the density projection");
    if (o.ok)
        o.detail = fmt("Stein %.1e", stein.v) + fmt(", idempotency %.1e", idem.v) + fmt(", block %.1e", block.v);
    return o;
}

Outcome kyp() {
    Outcome o;
    Worst res, dec;
    StateSpace S{CMatrix::scalar(1.0), CMatrix::scalar(-2.0), CMatrix::scalar(1.0), CMatrix::scalar(-1.0),
                 Center::Infinity};
    KypCertificate lossless{CMatrix::scalar(2.0), CMatrix(1, 0), CMatrix(1, 0)};
    for (double r : kyp_verify(S, lossless)) res.see(r);
    std::vector<FactorKyp> certs{kyp_certificate_for_factor(testutil::poisson_factor())};
    for (int t = 0; t < 4; ++t) certs.push_back(kyp_certificate_for_factor(testutil::random_factor(1, 1, true)));
    for (const auto& c : certs)
        for (double r : kyp_verify(c.phi, c.cert)) res.see(r);
    for (int k = 0; k < 20; ++k) {
        cd l = testutil::rand_in_disk(0.9), n = testutil::rand_in_disk(0.9);
        dec.see(kyp_kernel_decomposition(S, lossless, l, n));
        for (const auto& c : certs) dec.see(kyp_kernel_decomposition(c.phi, c.cert, l, n));
    }
    o.require(res.v < 1e-12, "KYP residuals");
    o.require(dec.v < 1e-10, "kernel decomposition");
    if (o.ok) o.detail = fmt("residual %.1e", res.v) + fmt(", decomposition %.1e", dec.v);
    return o;
}

Outcome displacement_structure() {
    Outcome o;
    Worst res, th;
    for (int t = 0; t < 20; ++t) {
        std::size_t p = 1 + static_cast<std::size_t>(t) % 3, N = static_cast<std::size_t>(t) % 6;
        auto mu = testutil::random_measure(1 + static_cast<std::size_t>(t) % 5, p);
        CMatrix F = finite_section(grid_from_measure(mu, N, N), N);
        auto d = displacement_decompose(F, p);
        res.see(d.residual / std::max(1.0, F.max_abs()));
        o.require(displacement_rank(F, p) <= 2 * p, "displacement rank above 2p");
    }
    int pairs = 0;
    for (int t = 0; t < 5; ++t) {
        std::size_t p = 1 + static_cast<std::size_t>(t) % 2;
        auto mu = testutil::random_measure(6, p);
        CMatrix F = finite_section(grid_from_measure(mu, 2, 2), 2);
        auto Th = theta(F, p);
        for (int k = 0; k < 10; ++k, ++pairs) {
            cd l = testutil::random_complex() * 0.8, n = testutil::random_complex() * 0.8;
            th.see(theta_kernel_check(F, p, Th, l, n));
        }
    }
    CMatrix F1{{1.0, 1.0}, {1.0, 1.0}};
    double hand = dist(displacement(F1, 1), CMatrix{{1.0, cd(1, -1)}, {cd(1, 1), 0.0}});
    auto d1 = displacement_decompose(F1, 1);
    o.require(res.v < 1e-12, "decomposition residual");
    o.require(th.v < 1e-9, "Theta kernel identity");
    o.require(hand < 1e-15 && d1.residual < 1e-15, "constant-grid hand case");
    o.require(pairs == 50, "point count");
    if (o.ok) o.detail = fmt("residual %.1e", res.v) + fmt(", Theta kernel %.1e over 50 pairs", th.v);
    return o;
}

Outcome realization_round_trips() {
    Outcome o;
    Worst rt, me;
    for (int t = 0; t < 5; ++t) {
        StateSpace S = random_minimal(4, 1 + static_cast<std::size_t>(t) % 2);
        o.require(is_minimal(S), "random system is not minimal");
        StateSpace S0 = phiL_realization_from_phi(S);
        for (int m = 0; m <= 8; ++m) {
            CMatrix a = f_row_from_phiL_realization(S, m);
            rt.see(dist(f_row_from_PhiL_realization(S0, m), a) / std::max(1.0, a.max_abs()));
        }
    }
    for (int t = 0; t < 5; ++t) {
        CMatrix A = random_matrix(4, 4);
        for (int n = 0; n <= 6; ++n) {
            auto a = moment_expansion_coeffs(A, n);
            CMatrix target = kSqrt2 * matpow(shift(-kI * A, kSqrt2), -(n + 1));
            CMatrix sum = CMatrix::zeros(4, 4), Ak = CMatrix::identity(4);
            for (cd c : a) {
                sum += c * Ak;
                Ak = Ak * A;
            }
            me.see(dist(sum, target) / std::max(1.0, target.max_abs()));
        }
    }
    o.require(rt.v < 1e-10, "boundary-row routes disagree");
    o.require(me.v < 1e-10, "moment expansion reconstruction");
    if (o.ok) o.detail = fmt("row gap %.1e", rt.v) + fmt(", reconstruction %.1e", me.v);
    return o;
}

Outcome growth_bounds() {
    Outcome o;
    const double up = (kSqrt2 + 1) * (kSqrt2 + 1), lo = (kSqrt2 - 1) * (kSqrt2 - 1);
    int grids = 0;
    auto check_grid = [&](const DafGrid& g) {
        ++grids;
        double m0 = 0.5 * g.at(0, 0).trace().real();
        for (std::size_t n = 0; n <= 8; ++n) {
            double v = g.at(n, n).trace().real();
            double hi = 2 * m0 * std::pow(up, static_cast<double>(n)), low = 2 * m0 * std::pow(lo, static_cast<double>(n));
            double slack = 1e-10 * std::max(1.0, hi);
            o.require(v <= hi + slack && v >= low - slack, "bound violated at n=" + std::to_string(n));
        }
        o.require(growth_bounds_check(g, 8).ok, "library bound check disagrees");
    };
    for (int t = 0; t < 10; ++t)
        check_grid(grid_from_measure(testutil::random_measure(1 + static_cast<std::size_t>(t) % 5, 1 + t % 3), 8, 8));
    for (int t = 0; t < 4; ++t) check_grid(symmetric_extension_grid(testutil::random_factor(1 + t % 3, 1 + t % 2, true), 8, 8));
    // equality cases
    Worst eq;
    for (double th : {1.5 * kPi, 0.5 * kPi}) {
        AtomicMeasure mu;
        mu.atoms.push_back({th, CMatrix::scalar(0.8)});
        auto g = grid_from_measure(mu, 8, 8);
        double base = th > kPi ? lo : up;
        for (std::size_t n = 0; n <= 8; ++n) {
            double expect = 2 * 0.8 * std::pow(base, static_cast<double>(n));
            eq.see(std::abs(g.at(n, n)(0, 0) - expect) / expect);
        }
    }
    o.require(eq.v < 1e-10, "equality atoms");
    if (o.ok) o.detail = std::to_string(grids) + " grids within bounds" + fmt(", equality error %.1e", eq.v);
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"CR closure of measure and factor grids", cr_closure},
        {"dilation moments match the quadrature oracle", moment_oracle},
        {"Toeplitz congruence and inertia", toeplitz_equivalence},
        {"lossless pipeline", lossless_pipeline},
        {"Fourier coefficients by two routes", fourier_double_route},
        {"Stein solve and Riesz projection", stein_riesz},
        {"KYP certificates", kyp},
        {"displacement structure and Theta", displacement_structure},
        {"realization round trips", realization_round_trips},
        {"diagonal growth bounds", growth_bounds},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r.ok = false;
            r.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %zu: %s: %s\n", r.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, r.detail.c_str());
        failed += r.ok ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
