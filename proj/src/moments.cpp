#include "daft/moments.hpp"

#include <cmath>
#include <sstream>

namespace daft {

namespace {

cd k_left(double theta) { return kSqrt2 * std::exp(cd(0, -theta)) - kI; }
cd k_right(double theta) { return kSqrt2 * std::exp(cd(0, theta)) + kI; }

std::size_t block_count(const CMatrix& F, std::size_t p) {
    if (p == 0 || !F.square() || F.rows() % p != 0) throw Error(ErrorKind::DimMismatch, "section size is not a multiple of p");
    return F.rows() / p;
}

}  // namespace

void AtomicMeasure::validate(const Tolerances& tol) const {
    for (std::size_t j = 0; j < atoms.size(); ++j) {
        const auto& a = atoms[j];
        if (a.weight.rows() != p || a.weight.cols() != p) throw Error(ErrorKind::DimMismatch, "atom weight size");
        if (!psd_check(a.weight, tol).psd) throw Error(ErrorKind::NotPSD, "atom weight is not PSD");
        for (std::size_t k = 0; k < j; ++k)
            if (std::abs(std::remainder(a.theta - atoms[k].theta, 2 * kPi)) <= tol.eq_tol)
                throw Error(ErrorKind::PreconditionFail, "atoms must be distinct");
    }
}

CMatrix trig_moment(const AtomicMeasure& mu, int k) {
    CMatrix M(mu.p, mu.p);
    for (const auto& a : mu.atoms) M += std::exp(cd(0, -k * a.theta)) * a.weight;
    return M;
}

MomentSequence moment_sequence(const AtomicMeasure& mu, std::size_t K) {
    MomentSequence s;
    for (std::size_t k = 0; k <= K; ++k) s.push_back(trig_moment(mu, static_cast<int>(k)));
    return s;
}

CMatrix daf_from_measure(const AtomicMeasure& mu, int m, int n) {
    CMatrix f(mu.p, mu.p);
    for (const auto& a : mu.atoms) f += 2.0 * std::pow(k_left(a.theta), m) * std::pow(k_right(a.theta), n) * a.weight;
    return f;
}

DafGrid grid_from_measure(const AtomicMeasure& mu, std::size_t M, std::size_t N) {
    return grid_from_function(mu.p, mu.p, M, N, [&](int m, int n) { return daf_from_measure(mu, m, n); });
}

CMatrix f_row_from_moments(const MomentSequence& Ms, std::size_t m) {
    if (m >= Ms.size()) throw Error(ErrorKind::IndexRange, "not enough moments");
    CMatrix f(Ms[0].rows(), Ms[0].cols());
    const int mi = static_cast<int>(m);
    for (int k = 0; k <= mi; ++k)
        f += 2.0 * std::pow(kSqrt2, k) * binomial(mi, k) * std::pow(-kI, mi - k) * Ms[static_cast<std::size_t>(k)];
    return f;
}

CMatrix moments_from_f_row(const std::vector<CMatrix>& row, std::size_t m) {
    if (m >= row.size()) throw Error(ErrorKind::IndexRange, "row too short");
    CMatrix M(row[0].rows(), row[0].cols());
    const int mi = static_cast<int>(m);
    for (int k = 0; k <= mi; ++k) M += binomial(mi, k) * std::pow(kI, mi - k) * row[static_cast<std::size_t>(k)];
    return M * (0.5 / std::pow(kSqrt2, mi));
}

CMatrix l_matrix(std::size_t N, std::size_t p) {
    CMatrix L((N + 1) * p, (N + 1) * p);
    for (std::size_t m = 0; m <= N; ++m)
        for (std::size_t k = 0; k <= m; ++k) {
            cd v = std::pow(kI, static_cast<int>(m - k)) * binomial(static_cast<int>(m), static_cast<int>(k)) /
                   std::pow(kSqrt2, static_cast<int>(m));
            for (std::size_t i = 0; i < p; ++i) L(m * p + i, k * p + i) = v;
        }
    return L;
}

CMatrix toeplitz_from_daf(const CMatrix& F, std::size_t p) {
    std::size_t n = block_count(F, p);
    CMatrix L = l_matrix(n - 1, p);
    return 0.5 * (L * F * L.adjoint());
}

CMatrix daf_from_toeplitz(const CMatrix& T, std::size_t p) {
    std::size_t n = block_count(T, p);
    CMatrix L = l_matrix(n - 1, p);
    // F = 2 L^{-1} T L^{-*}
    CMatrix Y = lu_solve(L, T);
    CMatrix F = lu_solve(L, Y.adjoint()).adjoint();
    return 2.0 * F;
}

CMatrix toeplitz_from_moments(const MomentSequence& Ms, std::size_t N) {
    if (Ms.size() < N + 1) throw Error(ErrorKind::IndexRange, "not enough moments");
    const std::size_t p = Ms[0].rows();
    CMatrix T((N + 1) * p, (N + 1) * p);
    for (std::size_t j = 0; j <= N; ++j)
        for (std::size_t k = 0; k <= N; ++k)
            T.set_block(j * p, k * p, j >= k ? Ms[j - k] : Ms[k - j].adjoint());
    return T;
}

double section_structure_residual(const CMatrix& F, std::size_t p) {
    std::size_t n = block_count(F, p);
    double worst = 0;
    for (std::size_t m = 0; m + 1 < n; ++m)
        for (std::size_t k = 0; k + 1 < n; ++k) {
            CMatrix r = F.block(m * p, k * p, p, p) + kI * F.block((m + 1) * p, k * p, p, p) -
                        kI * F.block(m * p, (k + 1) * p, p, p) - F.block((m + 1) * p, (k + 1) * p, p, p);
            worst = std::max(worst, r.norm_inf());
        }
    return worst;
}

OneStepResult one_step_fill(const CMatrix& F, std::size_t p, const CMatrix& lambda, const Tolerances& tol) {
    std::size_t n = block_count(F, p);
    if (lambda.rows() != p || lambda.cols() != p) throw Error(ErrorKind::DimMismatch, "lambda block size");
    double scale = std::max(1.0, F.max_abs());
    if (!is_hermitian(F, tol)) throw Error(ErrorKind::NotDaf, "section is not Hermitian");
    if (section_structure_residual(F, p) > tol.eq_tol * scale) throw Error(ErrorKind::NotDaf, "section violates CR");
    const std::size_t N = n - 1;
    DafGrid g(p, p, N + 1, N + 1);
    for (std::size_t m = 0; m <= N; ++m)
        for (std::size_t k = 0; k <= N; ++k) g.at(m, k) = F.block(m * p, k * p, p, p);
    g.at(N + 1, 0) = lambda;
    g.at(0, N + 1) = lambda.adjoint();
    for (std::size_t k = 0; k <= N; ++k) {
        g.at(N + 1, k + 1) = g.at(N, k) + kI * g.at(N + 1, k) - kI * g.at(N, k + 1);
        g.at(k + 1, N + 1) = g.at(k, N) + kI * g.at(k + 1, N) - kI * g.at(k, N + 1);
    }
    // the corner is reached twice; both recurrences agree for Hermitian data
    OneStepResult r;
    r.F = finite_section(g, N + 1);
    r.F = hermitian_part(r.F);
    r.classification = psd_check(r.F, tol);
    return r;
}

CMatrix herglotz_eval(const AtomicMeasure& mu, const CMatrix& X, cd lambda, const Tolerances& tol) {
    CMatrix v = kI * X;
    for (const auto& a : mu.atoms) {
        cd e = std::exp(cd(0, a.theta));
        if (std::abs(e - lambda) < tol.rank_tol) throw Error(ErrorKind::PoleAt, "lambda at an atom");
        v += ((e + lambda) / (e - lambda)) * a.weight;
    }
    return v;
}

TruncatedSeries phi_coeffs_from_measure(const AtomicMeasure& mu, const CMatrix& X, std::size_t order) {
    TruncatedSeries s;
    s.coeffs.push_back(trig_moment(mu, 0) + kI * X);
    for (std::size_t m = 1; m <= order; ++m) {
        CMatrix c(mu.p, mu.p);
        for (const auto& a : mu.atoms)
            c += 2.0 * kSqrt2 * std::exp(cd(0, -a.theta)) * std::pow(k_left(a.theta), static_cast<int>(m) - 1) * a.weight;
        s.coeffs.push_back(std::move(c));
    }
    return s;
}

CMatrix kernel_eval_measure(const AtomicMeasure& mu, cd lambda, cd nu, const Tolerances& tol) {
    CMatrix v(mu.p, mu.p);
    for (const auto& a : mu.atoms) {
        cd d = (1.0 - lambda * k_left(a.theta)) * (1.0 - std::conj(nu) * k_right(a.theta));
        if (std::abs(d) < tol.rank_tol) throw Error(ErrorKind::PoleAt, "kernel denominator vanishes");
        v += (2.0 / d) * a.weight;
    }
    return v;
}

GrowthReport growth_bounds_check(const DafGrid& g, std::size_t upTo, const Tolerances& tol) {
    GrowthReport r;
    std::size_t K = std::min({upTo, g.M(), g.N()});
    r.m0 = 0.5 * g.at(0, 0).trace().real();
    const double up = (kSqrt2 + 1) * (kSqrt2 + 1), lo = (kSqrt2 - 1) * (kSqrt2 - 1);
    r.max_upper_ratio = 0;
    r.min_lower_ratio = std::numeric_limits<double>::infinity();
    auto report = [&](const std::string& s) {
        r.ok = false;
        r.violations.push_back(s);
    };
    for (std::size_t n = 0; n <= K; ++n) {
        cd t = g.at(n, n).trace();
        r.diagonal.push_back(t.real());
        double hi = 2 * r.m0 * std::pow(up, static_cast<double>(n));
        double low = 2 * r.m0 * std::pow(lo, static_cast<double>(n));
        double slack = tol.eq_tol * std::max(1.0, hi);
        if (std::abs(t.imag()) > slack) report("f(" + std::to_string(n) + "," + std::to_string(n) + ") has non-real trace");
        if (t.real() > hi + slack) report("upper bound violated at n=" + std::to_string(n));
        if (t.real() < low - slack) report("lower bound violated at n=" + std::to_string(n));
        if (r.m0 > 0) {
            r.max_upper_ratio = std::max(r.max_upper_ratio, t.real() / hi);
            r.min_lower_ratio = std::min(r.min_lower_ratio, t.real() / low);
        }
    }
    for (std::size_t m = 0; m <= std::min(upTo, g.M()); ++m)
        for (std::size_t n = 0; n <= std::min(upTo, g.N()); ++n) {
            double bound = 2 * r.m0 * std::pow(kSqrt2 + 1, static_cast<double>(m + n));
            if (std::abs(g.at(m, n).trace()) > bound + tol.eq_tol * std::max(1.0, bound)) {
                std::ostringstream os;
                os << "modulus bound violated at (" << m << "," << n << ")";
                report(os.str());
            }
        }
    return r;
}

GrowthReport growth_bounds_check(const AtomicMeasure& mu, std::size_t upTo, const Tolerances& tol) {
    return growth_bounds_check(grid_from_measure(mu, upTo, upTo), upTo, tol);
}

}  // namespace daft
