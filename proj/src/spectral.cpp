#include "daft/spectral.hpp"

#include <cmath>

namespace daft {

namespace {

bool is_zero(const CMatrix& m) { return m.max_abs() == 0.0; }

// (d b^* + c X a^*) with the d-term dropped when d = 0, times a^{-*} when needed
CMatrix row_left(const SpectralFactor& w, const CMatrix& X, const Tolerances& tol) {
    CMatrix left = w.c * X;
    if (!is_zero(w.d)) left += w.d * w.b.adjoint() * inverse(w.a.adjoint(), tol);
    return left;
}

CMatrix row_const(const SpectralFactor& w, const Tolerances& tol) {
    if (is_zero(w.d)) return CMatrix(w.p(), w.p());
    CMatrix ais = inverse(w.a.adjoint(), tol);
    return w.d * (w.d.adjoint() - w.b.adjoint() * ais * w.c.adjoint());
}

void require_zero_d(const SpectralFactor& w, const Tolerances& tol) {
    if (w.d.max_abs() > tol.eq_tol) throw Error(ErrorKind::PreconditionFail, "factor must have d = 0");
}

}  // namespace

void SpectralFactor::validate() const {
    const std::size_t l = a.rows(), q = d.rows();
    if (a.cols() != l || b.rows() != l || b.cols() != q || c.rows() != q || c.cols() != l || d.cols() != q)
        throw Error(ErrorKind::DimMismatch, "spectral factor dimensions");
}

CMatrix factor_eval(const SpectralFactor& w, cd lambda, const Tolerances& tol) {
    w.validate();
    try {
        return w.d + w.c * lu_solve(shift(-w.a, lambda), w.b, tol);
    } catch (const Error&) {
        throw Error(ErrorKind::PoleAt, "lambda is an eigenvalue of a");
    }
}

CMatrix density_eval(const SpectralFactor& w, cd lambda, const Tolerances& tol) {
    if (std::abs(lambda) < tol.rank_tol) throw Error(ErrorKind::PoleAt, "density undefined at 0");
    cd mirror = 1.0 / std::conj(lambda);
    return factor_eval(w, lambda, tol) * factor_eval(w, mirror, tol).adjoint();
}

CMatrix stein_solve(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
    if (!a.square() || b.rows() != a.rows()) throw Error(ErrorKind::DimMismatch, "stein_solve dimensions");
    const std::size_t l = a.rows();
    if (l == 0) return CMatrix(0, 0);
    if (spectral_radius_proxy(a, 1024) >= 1.0) throw Error(ErrorKind::Unstable, "spectral radius of a is not below 1");
    CMatrix Q = b * b.adjoint();
    CMatrix K = CMatrix::identity(l * l) - kron(a.conj(), a);
    CMatrix X;
    try {
        X = unvec(lu_solve(K, vec(Q), tol), l, l);
    } catch (const Error&) {
        throw Error(ErrorKind::Unstable, "Stein operator is singular");
    }
    X = hermitian_part(X);
    if (dist(X - a * X * a.adjoint(), Q) > 1e-12 * std::max(1.0, Q.max_abs()) * std::max(1.0, K.norm_inf()))
        throw Error(ErrorKind::Unstable, "Stein residual too large");
    return X;
}

StateSpace density_realization(const SpectralFactor& w, const Tolerances& tol) {
    w.validate();
    const std::size_t l = w.ell();
    CMatrix ais = inverse(w.a.adjoint(), tol);
    // w(1/conj(lambda))^* = D2 + C2 (lambda - A2)^{-1} B2
    CMatrix A2 = ais, B2 = ais * w.c.adjoint(), C2 = -(w.b.adjoint() * ais);
    CMatrix D2 = w.d.adjoint() - w.b.adjoint() * ais * w.c.adjoint();
    StateSpace S;
    S.A = CMatrix(2 * l, 2 * l);
    S.A.set_block(0, 0, w.a);
    S.A.set_block(0, l, w.b * C2);
    S.A.set_block(l, l, A2);
    S.B = vstack(w.b * D2, B2);
    S.C = hstack(w.c, w.d * C2);
    S.D = w.d * D2;
    return S;
}

CMatrix fourier_coeffs_factor(const SpectralFactor& w, int k, const Tolerances& tol) {
    w.validate();
    if (k < 0) return fourier_coeffs_factor(w, -k, tol).adjoint();
    CMatrix X = stein_solve(w.a, w.b, tol);
    if (k == 0) return w.d * w.d.adjoint() + w.c * X * w.c.adjoint();
    CMatrix left = w.d * w.b.adjoint() + w.c * X * w.a.adjoint();
    return left * matpow(w.a.adjoint(), k - 1) * w.c.adjoint();
}

CMatrix cara_from_factor(const SpectralFactor& w, cd lambda, const Tolerances& tol) {
    w.validate();
    CMatrix X = stein_solve(w.a, w.b, tol);
    const std::size_t l = w.ell();
    CMatrix as = w.a.adjoint();
    CMatrix M = CMatrix::identity(l) - lambda * as;
    CMatrix r;
    try {
        r = lu_solve(M, (CMatrix::identity(l) + lambda * as) * w.c.adjoint(), tol);
    } catch (const Error&) {
        throw Error(ErrorKind::PoleAt, "I - lambda a^* is singular");
    }
    return row_const(w, tol) + row_left(w, X, tol) * r;
}

CMatrix f_row_from_density(const StateSpace& Sden, const CMatrix& P, int m, const Tolerances& tol) {
    Sden.validate();
    if (m < 0) throw Error(ErrorKind::IndexRange, "m must be nonnegative");
    const std::size_t N = Sden.states();
    CMatrix out = std::pow(-kI, m) * Sden.D;
    CMatrix IP = CMatrix::identity(N) - P;
    CMatrix Q = range_basis(IP, tol);
    if (Q.cols() > 0) {
        // G = ((I-P)A)^{-1} on ran(I-P)
        CMatrix G = inverse(Q.adjoint() * Sden.A * Q, tol);
        CMatrix T = kSqrt2 * G - kI * CMatrix::identity(Q.cols());
        out -= Sden.C * Q * G * matpow(T, m) * (Q.adjoint() * IP * Sden.B);
    }
    return 2.0 * out;
}

CMatrix f_row_from_factor(const SpectralFactor& w, int m, const Tolerances& tol) {
    w.validate();
    if (m < 0) throw Error(ErrorKind::IndexRange, "m must be nonnegative");
    CMatrix X = stein_solve(w.a, w.b, tol);
    CMatrix T = kSqrt2 * w.a.adjoint() - kI * CMatrix::identity(w.ell());
    return 2.0 * (std::pow(-kI, m) * row_const(w, tol) + row_left(w, X, tol) * matpow(T, m) * w.c.adjoint());
}

CMatrix f_row_from_factor_inner(const SpectralFactor& w, int m, const Tolerances& tol) {
    w.validate();
    if (m < 0) throw Error(ErrorKind::IndexRange, "m must be nonnegative");
    CMatrix Ai = inverse(w.a, tol);
    CMatrix inner = w.c * Ai * w.b;
    if (dist(w.d, inner) > tol.eq_tol * std::max(1.0, inner.max_abs()))
        throw Error(ErrorKind::PreconditionFail, "d differs from c a^{-1} b");
    CMatrix X = stein_solve(w.a, w.b, tol);
    CMatrix T = kSqrt2 * w.a.adjoint() - kI * CMatrix::identity(w.ell());
    return 2.0 * (w.c * Ai * X * Ai.adjoint() * matpow(T, m) * w.c.adjoint());
}

CMatrix dilation_extend(const DilationCalculus& dc, int m, int n, const Tolerances& tol) {
    if (!dc.T.square() || dc.Cout.cols() != dc.T.rows()) throw Error(ErrorKind::DimMismatch, "dilation dimensions");
    if (m < 0 || n < 0) throw Error(ErrorKind::IndexRange, "m, n must be nonnegative");
    const std::size_t l = dc.T.rows();
    if (l > 0) {
        auto e = hermitian_eig(hermitian_part(dc.T.adjoint() * dc.T), tol);
        if (e.values.back() > 1.0 + tol.eq_tol) throw Error(ErrorKind::NotContraction, "T is not a contraction");
    }
    // T^{<r>} for r in [-m, n]
    std::vector<CMatrix> pos{CMatrix::identity(l)}, neg{CMatrix::identity(l)};
    for (int r = 1; r <= n; ++r) pos.push_back(pos.back() * dc.T);
    CMatrix Ts = dc.T.adjoint();
    for (int r = 1; r <= m; ++r) neg.push_back(neg.back() * Ts);
    CMatrix sum(l, l);
    for (int j = 0; j <= m; ++j)
        for (int k = 0; k <= n; ++k) {
            cd coef = binomial(m, j) * binomial(n, k) * std::pow(kSqrt2, j + k) * std::pow(-kI, m - j) *
                      std::pow(kI, n - k);
            int r = k - j;
            sum += coef * (r >= 0 ? pos[static_cast<std::size_t>(r)] : neg[static_cast<std::size_t>(-r)]);
        }
    return dc.Cout * sum * dc.Cout.adjoint();
}

DilationCalculus dilation_for_factor(const SpectralFactor& w, const Tolerances& tol) {
    w.validate();
    require_zero_d(w, tol);
    CMatrix X = stein_solve(w.a, w.b, tol);
    auto pr = psd_check(X, tol);
    if (!pr.psd || pr.eigenvalues.empty() || pr.eigenvalues.front() <= tol.rank_tol * std::max(1.0, X.max_abs()))
        throw Error(ErrorKind::NotPSD, "X is not positive definite");
    CMatrix Xh = sqrt_psd(X, tol);
    CMatrix Xhi = inverse(Xh, tol);
    return {Xhi * w.a * Xh, kSqrt2 * (w.c * Xh)};
}

CMatrix symmetric_extension_from_factor(const SpectralFactor& w, int m, int n, const Tolerances& tol) {
    return dilation_extend(dilation_for_factor(w, tol), m, n, tol);
}

DafGrid symmetric_extension_grid(const SpectralFactor& w, std::size_t M, std::size_t N, const Tolerances& tol) {
    DilationCalculus dc = dilation_for_factor(w, tol);
    return grid_from_function(w.p(), w.p(), M, N, [&](int m, int n) { return dilation_extend(dc, m, n, tol); });
}

FactorKyp kyp_certificate_for_factor(const SpectralFactor& w, const Tolerances& tol) {
    w.validate();
    require_zero_d(w, tol);
    CMatrix X = stein_solve(w.a, w.b, tol);
    CMatrix ais = inverse(w.a.adjoint(), tol);
    CMatrix Xi = inverse(X, tol);
    FactorKyp out;
    out.phi.A = ais;
    out.phi.B = -kSqrt2 * w.c.adjoint();
    out.phi.C = kSqrt2 * (w.c * X * ais);
    out.phi.D = -(w.c * X * w.c.adjoint());
    out.phi.center = Center::Infinity;
    out.cert.P = hermitian_part(w.a.adjoint() * Xi * w.a);
    CMatrix gap = hermitian_part(Xi - out.cert.P);
    if (!psd_check(gap, tol).psd) throw Error(ErrorKind::NotPSD, "X^{-1} - a^* X^{-1} a is indefinite");
    out.cert.L = sqrt_psd(gap, tol);
    out.cert.W = CMatrix(w.p(), w.ell());
    return out;
}

}  // namespace daft
