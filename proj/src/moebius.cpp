#include "daft/moebius.hpp"

#include <cmath>

namespace daft {

CMatrix TruncatedSeries::eval(cd lambda) const {
    if (coeffs.empty()) throw Error(ErrorKind::TooSmall, "empty series");
    CMatrix acc = coeffs.back();
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) acc = lambda * acc + coeffs[k];
    return acc;
}

cd sigma(cd lambda, const Tolerances& tol) {
    cd den = 1.0 + kI * lambda;
    if (std::abs(den) < tol.rank_tol) throw Error(ErrorKind::PoleAt, "sigma has a pole at i");
    return kSqrt2 * lambda / den;
}

cd sigma_inv(cd lambda, const Tolerances& tol) {
    cd den = kSqrt2 - kI * lambda;
    if (std::abs(den) < tol.rank_tol) throw Error(ErrorKind::PoleAt, "sigma_inv has a pole at -i sqrt2");
    return lambda / den;
}

cd symmetric_point(cd lambda, const Tolerances& tol) {
    cd lb = std::conj(lambda);
    cd den = lb - kI;
    if (std::abs(den) < tol.rank_tol) throw Error(ErrorKind::PoleAt, "symmetric point undefined at -i");
    return (1.0 - kI * lb) / den;
}

Region region_classify(cd lambda, const Tolerances& tol) {
    double r = std::abs(lambda + kI);
    if (std::abs(r - kSqrt2) <= tol.eq_tol) return Region::OmegaZero;
    return r < kSqrt2 ? Region::OmegaPlus : Region::OmegaMinus;
}

namespace {

void check_blocks(const std::vector<CMatrix>& v, const CMatrix& X) {
    if (v.empty()) throw Error(ErrorKind::TooSmall, "empty boundary sequence");
    for (const auto& b : v)
        if (b.rows() != v[0].rows() || b.cols() != v[0].cols())
            throw Error(ErrorKind::DimMismatch, "boundary blocks differ in size");
    if (X.rows() != v[0].rows() || X.cols() != v[0].cols())
        throw Error(ErrorKind::DimMismatch, "X has the wrong block size");
}

// (1 + i lambda) sum g_m lambda^m - g_0/2 + i Y
TruncatedSeries generating(const std::vector<CMatrix>& g, const CMatrix& Y, std::size_t order) {
    const CMatrix zero(g[0].rows(), g[0].cols());
    auto at = [&](std::size_t k) -> const CMatrix& { return k < g.size() ? g[k] : zero; };
    TruncatedSeries s;
    for (std::size_t k = 0; k <= order; ++k) {
        CMatrix c = at(k);
        if (k >= 1) c += kI * at(k - 1);
        s.coeffs.push_back(std::move(c));
    }
    s.coeffs[0] = 0.5 * g[0] + kI * Y;
    return s;
}

// coefficients of S(lambda) / (1 + i lambda)
std::vector<CMatrix> divide_by_one_plus_i(const std::vector<CMatrix>& S) {
    std::vector<CMatrix> out;
    for (std::size_t k = 0; k < S.size(); ++k) {
        CMatrix c = S[k];
        if (k >= 1) c -= kI * out[k - 1];
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

TruncatedSeries boundary_generating(const std::vector<CMatrix>& row, const CMatrix& X, std::size_t order) {
    check_blocks(row, X);
    return generating(row, X, order);
}

TruncatedSeries boundary_generating_right(const std::vector<CMatrix>& col, const CMatrix& X,
                                          std::size_t order) {
    check_blocks(col, X);
    std::vector<CMatrix> adj;
    for (const auto& c : col) adj.push_back(c.adjoint());
    return generating(adj, X.adjoint(), order);
}

Kernel2 kernel_from_boundary(const TruncatedSeries& phiL, const TruncatedSeries& phiR) {
    if (phiL.coeffs.empty() || phiR.coeffs.empty()) throw Error(ErrorKind::TooSmall, "empty series");
    const std::size_t p = phiL.coeffs[0].rows(), q = phiL.coeffs[0].cols();
    if (phiR.coeffs[0].rows() != q || phiR.coeffs[0].cols() != p)
        throw Error(ErrorKind::DimMismatch, "right series block size");
    // Boundary row: (PhiL(l) + PhiR(0)^*) / (1 + i l); column analogously with adjoints.
    std::vector<CMatrix> L = phiL.coeffs;
    L[0] += phiR.coeffs[0].adjoint();
    std::vector<CMatrix> R = phiR.coeffs;
    R[0] += phiL.coeffs[0].adjoint();
    auto row = divide_by_one_plus_i(L);
    auto colAdj = divide_by_one_plus_i(R);
    std::vector<CMatrix> col;
    for (const auto& c : colAdj) col.push_back(c.adjoint());
    return extend_from_boundary(row, col);
}

std::vector<cd> sigma_inv_series(std::size_t order) {
    // lambda/(sqrt2 - i lambda) = sum_{k>=1} i^{k-1} lambda^k / sqrt2^k
    std::vector<cd> s(order + 1, 0.0);
    cd term = 1.0 / kSqrt2;
    for (std::size_t k = 1; k <= order; ++k) {
        s[k] = term;
        term *= kI / kSqrt2;
    }
    return s;
}

std::vector<cd> sigma_series(std::size_t order) {
    // sqrt2 lambda/(1 + i lambda) = sqrt2 sum_{k>=1} (-i)^{k-1} lambda^k
    std::vector<cd> s(order + 1, 0.0);
    cd term = kSqrt2;
    for (std::size_t k = 1; k <= order; ++k) {
        s[k] = term;
        term *= -kI;
    }
    return s;
}

TruncatedSeries compose(const TruncatedSeries& outer, const std::vector<cd>& inner, std::size_t order) {
    if (outer.coeffs.empty()) throw Error(ErrorKind::TooSmall, "empty series");
    if (!inner.empty() && std::abs(inner[0]) != 0.0)
        throw Error(ErrorKind::PreconditionFail, "inner series must vanish at 0");
    const std::size_t p = outer.coeffs[0].rows(), q = outer.coeffs[0].cols();
    auto innerAt = [&](std::size_t k) { return k < inner.size() ? inner[k] : cd(0.0); };
    TruncatedSeries out;
    out.coeffs.assign(order + 1, CMatrix(p, q));
    std::vector<cd> power(order + 1, 0.0);  // inner^j
    power[0] = 1.0;
    for (std::size_t j = 0; j < outer.coeffs.size() && j <= order; ++j) {
        for (std::size_t k = 0; k <= order; ++k)
            if (power[k] != cd(0.0)) out.coeffs[k] += power[k] * outer.coeffs[j];
        std::vector<cd> next(order + 1, 0.0);
        for (std::size_t a = 0; a <= order; ++a)
            if (power[a] != cd(0.0))
                for (std::size_t b = 1; a + b <= order; ++b) next[a + b] += power[a] * innerAt(b);
        power = std::move(next);
    }
    return out;
}

TruncatedSeries characteristic_from_boundary(const TruncatedSeries& Phi, std::size_t order) {
    return compose(Phi, sigma_inv_series(order), order);
}

TruncatedSeries boundary_from_characteristic(const TruncatedSeries& phi, std::size_t order) {
    return compose(phi, sigma_series(order), order);
}

TruncatedSeries taylor_by_quadrature(const std::function<CMatrix(cd)>& f, std::size_t order, double radius,
                                     std::size_t nodes) {
    TruncatedSeries s;
    std::vector<CMatrix> samples;
    for (std::size_t j = 0; j < nodes; ++j)
        samples.push_back(f(std::polar(radius, 2 * kPi * static_cast<double>(j) / static_cast<double>(nodes))));
    for (std::size_t k = 0; k <= order; ++k) {
        CMatrix acc(samples[0].rows(), samples[0].cols());
        for (std::size_t j = 0; j < nodes; ++j)
            acc += std::polar(1.0, -2 * kPi * static_cast<double>(k * j) / static_cast<double>(nodes)) * samples[j];
        s.coeffs.push_back(acc / cd(static_cast<double>(nodes) * std::pow(radius, static_cast<double>(k))));
    }
    return s;
}

}  // namespace daft
