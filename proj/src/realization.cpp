#include "daft/realization.hpp"

#include <cmath>

namespace daft {

namespace {

double scale_of(std::initializer_list<const CMatrix*> ms) {
    double s = 1.0;
    for (const CMatrix* m : ms) s = std::max(s, m->max_abs());
    return s;
}

CMatrix stack_powers_rows(const CMatrix& C, const CMatrix& A) {
    CMatrix out(0, C.cols());
    CMatrix t = C;
    for (std::size_t k = 0; k < A.rows(); ++k) {
        out = vstack(out, t);
        t = t * A;
    }
    return out;
}

CMatrix stack_powers_cols(const CMatrix& A, const CMatrix& B) {
    CMatrix out(B.rows(), 0);
    CMatrix t = B;
    for (std::size_t k = 0; k < A.rows(); ++k) {
        out = hstack(out, t);
        t = A * t;
    }
    return out;
}

// The piece of A living on ran(Q), Q orthonormal with A ran(Q) in ran(Q).
CMatrix compress(const CMatrix& A, const CMatrix& Q) { return Q.adjoint() * A * Q; }

}  // namespace

void StateSpace::validate() const {
    const std::size_t N = A.rows();
    if (A.cols() != N || B.rows() != N || C.cols() != N || C.rows() != D.rows() || B.cols() != D.cols())
        throw Error(ErrorKind::DimMismatch, "inconsistent realization dimensions");
}

CMatrix eval(const StateSpace& S, cd lambda, const Tolerances& tol) {
    S.validate();
    const std::size_t N = S.states();
    if (N == 0) return S.D;
    try {
        if (S.center == Center::Infinity) return S.D + S.C * lu_solve(shift(-S.A, lambda), S.B, tol);
        CMatrix M = CMatrix::identity(N) - lambda * S.A;
        return S.D + lambda * (S.C * lu_solve(M, S.B, tol));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Singular) throw Error(ErrorKind::PoleAt, "lambda is a pole of the realization");
        throw;
    }
}

std::size_t observability_rank(const CMatrix& C, const CMatrix& A, const Tolerances& tol) {
    if (A.rows() == 0) return 0;
    return rank(stack_powers_rows(C, A), tol);
}

std::size_t controllability_rank(const CMatrix& A, const CMatrix& B, const Tolerances& tol) {
    if (A.rows() == 0) return 0;
    return rank(stack_powers_cols(A, B), tol);
}

bool is_minimal(const StateSpace& S, const Tolerances& tol) {
    S.validate();
    return observability_rank(S.C, S.A, tol) == S.states() && controllability_rank(S.A, S.B, tol) == S.states();
}

StateSpace product(const StateSpace& S1, const StateSpace& S2) {
    S1.validate();
    S2.validate();
    if (S1.D.cols() != S2.D.rows()) throw Error(ErrorKind::DimMismatch, "inner dimensions of the product");
    if (S1.center != S2.center) throw Error(ErrorKind::PreconditionFail, "factors have different centers");
    const std::size_t n1 = S1.states(), n2 = S2.states();
    StateSpace P;
    P.center = S1.center;
    P.A = CMatrix(n1 + n2, n1 + n2);
    P.A.set_block(0, 0, S1.A);
    P.A.set_block(0, n1, S1.B * S2.C);
    P.A.set_block(n1, n1, S2.A);
    P.B = vstack(S1.B * S2.D, S2.B);
    P.C = hstack(S1.C, S1.D * S2.C);
    P.D = S1.D * S2.D;
    return P;
}

StateSpace recenter_zero(const StateSpace& S, const Tolerances& tol) {
    S.validate();
    if (S.center != Center::Infinity) throw Error(ErrorKind::PreconditionFail, "realization already centered at 0");
    CMatrix Ai = inverse(S.A, tol);
    StateSpace Z;
    Z.center = Center::Zero;
    Z.A = Ai;
    Z.B = Ai * S.B;
    Z.C = -(S.C * Ai);
    Z.D = S.D - S.C * Z.B;
    return Z;
}

Triple inverse_triple(const StateSpace& S, const Tolerances& tol) {
    S.validate();
    CMatrix Ai = inverse(S.A, tol);
    CMatrix R = inverse(shift(kI * S.A, 1.0), tol);
    return {Ai, Ai * S.B, S.C * R};
}

LosslessCertificate lossless_check(const StateSpace& S, const CMatrix& H, const Tolerances& tol) {
    S.validate();
    if (!is_hermitian(H, tol)) throw Error(ErrorKind::NotHermitian, "H must be Hermitian");
    CMatrix Hi = inverse(H, tol);
    CMatrix Ais = inverse(S.A.adjoint(), tol);
    LosslessCertificate c;
    c.H = H;
    c.residuals[0] = dist(S.A, Hi * Ais * H);
    c.residuals[1] = dist(S.D + S.D.adjoint(), -(S.C * Hi * S.C.adjoint()));
    c.residuals[2] = dist(S.B, -(S.A * Hi * S.C.adjoint()));
    return c;
}

std::function<CMatrix(cd)> cara_from_unitary(const CMatrix& C, const CMatrix& A, const CMatrix& H,
                                             const CMatrix& D, const Tolerances& tol) {
    if (!is_hermitian(H, tol)) throw Error(ErrorKind::NotHermitian, "H must be Hermitian");
    CMatrix HiC = lu_solve(H, C.adjoint(), tol);
    CMatrix skew = 0.5 * (D - D.adjoint());
    return [=](cd lambda) {
        CMatrix R;
        try {
            R = lu_solve(shift(A, -lambda), shift(A, lambda) * HiC, tol);
        } catch (const Error&) {
            throw Error(ErrorKind::PoleAt, "lambda is an eigenvalue of A");
        }
        return skew + 0.5 * (C * R);
    };
}

double lossless_kernel_check(const StateSpace& S, const CMatrix& H, cd lambda, cd nu, const Tolerances& tol) {
    cd den = 1.0 - lambda * std::conj(nu);
    if (std::abs(den) < tol.rank_tol) throw Error(ErrorKind::PoleAt, "lambda conj(nu) = 1");
    CMatrix lhs = (eval(S, lambda, tol) + eval(S, nu, tol).adjoint()) / den;
    CMatrix Rl = lu_solve(shift(-S.A, lambda), CMatrix::identity(S.states()), tol);
    CMatrix Rn = lu_solve(shift(-S.A, nu), CMatrix::identity(S.states()), tol);
    CMatrix rhs = S.C * Rl * inverse(H, tol) * Rn.adjoint() * S.C.adjoint();
    return (lhs - rhs).norm_inf();
}

StateSpace cayley_schur(const StateSpace& S, const CMatrix& H, const Tolerances& tol) {
    S.validate();
    const std::size_t p = S.D.rows();
    double sc = scale_of({&S.D});
    if (dist(S.D, S.D.adjoint()) > tol.eq_tol * sc) throw Error(ErrorKind::PreconditionFail, "D is not Hermitian");
    CMatrix HiC = lu_solve(H, S.C.adjoint(), tol);
    CMatrix phi0 = 0.5 * (S.C * HiC);
    if (dist(phi0, CMatrix::identity(p)) > tol.eq_tol * std::max(1.0, phi0.max_abs()))
        throw Error(ErrorKind::PreconditionFail, "phi(0) differs from I");
    CMatrix Ai = inverse(S.A, tol);
    StateSpace out;
    out.center = Center::Zero;
    out.A = (CMatrix::identity(S.states()) - 0.5 * (HiC * S.C)) * Ai;
    out.B = HiC;
    out.C = 0.5 * (S.C * Ai);
    out.D = CMatrix(p, p);
    return out;
}

std::array<double, 3> kyp_verify(const StateSpace& S, const KypCertificate& cert) {
    S.validate();
    const std::size_t N = S.states(), p = S.D.rows();
    if (cert.P.rows() != N || cert.P.cols() != N || cert.L.rows() != N || cert.W.rows() != p ||
        cert.L.cols() != cert.W.cols())
        throw Error(ErrorKind::DimMismatch, "certificate dimensions");
    const CMatrix &A = S.A, &P = cert.P, &L = cert.L, &W = cert.W;
    std::array<double, 3> r{};
    r[0] = dist(P - A * P * A.adjoint(), -(L * L.adjoint()));
    r[1] = dist(A * P * S.C.adjoint(), -S.B - L * W.adjoint());
    r[2] = dist(W * W.adjoint(), S.D + S.D.adjoint() + S.C * P * S.C.adjoint());
    return r;
}

double kyp_kernel_decomposition(const StateSpace& S, const KypCertificate& cert, cd lambda, cd nu,
                                const Tolerances& tol) {
    cd den = 1.0 - lambda * std::conj(nu);
    if (std::abs(den) < tol.rank_tol) throw Error(ErrorKind::PoleAt, "lambda conj(nu) = 1");
    const std::size_t N = S.states();
    CMatrix Rl = lu_solve(shift(-S.A, lambda), CMatrix::identity(N), tol);
    CMatrix Rn = lu_solve(shift(-S.A, nu), CMatrix::identity(N), tol);
    CMatrix lhs = (eval(S, lambda, tol) + eval(S, nu, tol).adjoint()) / den;
    CMatrix gl = cert.W - S.C * Rl * cert.L;
    CMatrix gn = cert.W - S.C * Rn * cert.L;
    CMatrix rhs = S.C * Rl * cert.P * Rn.adjoint() * S.C.adjoint() + (gl * gn.adjoint()) / den;
    return (lhs - rhs).norm_inf();
}

CMatrix riesz_projection(const CMatrix& A, std::size_t nodes, const Tolerances& tol) {
    if (!A.square()) throw Error(ErrorKind::DimMismatch, "riesz_projection needs a square matrix");
    const std::size_t N = A.rows();
    CMatrix P;
    try {
        P = circle_quadrature(
            [&](double t) {
                cd z = std::exp(cd(0, t));
                return z * lu_solve(shift(-A, z), CMatrix::identity(N), tol);
            },
            nodes);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Singular) throw Error(ErrorKind::SpectrumOnCircle, "quadrature node hits the spectrum");
        throw;
    }
    if (!P.all_finite() || dist(P * P, P) >= 1e-8) throw Error(ErrorKind::SpectrumOnCircle, "projection is not idempotent");
    return P;
}

CMatrix fourier_coeffs_realization(const StateSpace& S, const CMatrix& P, int u, const Tolerances& tol) {
    S.validate();
    const std::size_t N = S.states();
    CMatrix out = u == 0 ? S.D : CMatrix(S.D.rows(), S.D.cols());
    if (N == 0) return out;
    if (u < 0) return out + S.C * matpow(P * S.A, -u - 1) * P * S.B;
    CMatrix IP = CMatrix::identity(N) - P;
    CMatrix Q = range_basis(IP, tol);
    if (Q.cols() == 0) return out;
    CMatrix M = compress(S.A, Q);
    CMatrix y = matpow(inverse(M, tol), u + 1) * (Q.adjoint() * IP * S.B);
    return out - S.C * Q * y;
}

StateSpace phiL_realization_from_phi(const StateSpace& S, const Tolerances& tol) {
    S.validate();
    CMatrix K = inverse(shift(-kI * S.A, kSqrt2), tol);  // (sqrt2 I - i A)^{-1}
    StateSpace S0;
    S0.center = S.center;
    S0.A = S.A * K;
    S0.B = kSqrt2 * (K * S.B);
    S0.C = S.C * K;
    S0.D = S.D + kI * (S.C * K * S.B);
    return S0;
}

CMatrix f_row_from_PhiL_realization(const StateSpace& S0, int m, const Tolerances& tol) {
    S0.validate();
    if (m < 0) throw Error(ErrorKind::IndexRange, "m must be nonnegative");
    CMatrix Ai = inverse(S0.A, tol);
    // Phi_L(0) + Phi_L(i) must vanish
    CMatrix guard = eval(S0, 0.0, tol) + eval(S0, kI, tol);
    double sc = scale_of({&S0.D, &S0.B, &S0.C});
    if (guard.max_abs() > tol.eq_tol * sc * sc)
        throw Error(ErrorKind::PreconditionFail, "Phi_L(0) + Phi_L(i) is not zero");
    CMatrix R = inverse(shift(kI * S0.A, 1.0), tol);
    return -(S0.C * R * matpow(Ai, m + 1) * S0.B);
}

CMatrix f_row_from_phiL_realization(const StateSpace& S, int m, const Tolerances& tol) {
    S.validate();
    if (m < 0) throw Error(ErrorKind::IndexRange, "m must be nonnegative");
    CMatrix Ai = inverse(S.A, tol);
    CMatrix AiB = Ai * S.B;
    // phi(0) + phi(inf) = 2D - C A^{-1} B must vanish
    CMatrix guard = 2.0 * S.D - S.C * AiB;
    double sc = scale_of({&S.D, &S.B, &S.C});
    if (guard.max_abs() > tol.eq_tol * sc * sc)
        throw Error(ErrorKind::PreconditionFail, "phi(0) + phi(inf) is not zero");
    CMatrix G = kSqrt2 * Ai - kI * CMatrix::identity(S.states());
    return -(S.C * matpow(G, m) * AiB);
}

namespace {

void require_lossless(const CMatrix& A, const CMatrix& H, const Tolerances& tol) {
    if (!A.square() || H.rows() != A.rows() || !H.square()) throw Error(ErrorKind::DimMismatch, "A and H sizes");
    double sc = std::max(1.0, A.max_abs() * A.max_abs() * H.max_abs());
    if (dist(A.adjoint() * H * A, H) > tol.eq_tol * sc) throw Error(ErrorKind::NotLossless, "A is not H-unitary");
}

}  // namespace

CMatrix f_row_lossless(const CMatrix& C, const CMatrix& A, const CMatrix& H, int m, const Tolerances& tol) {
    require_lossless(A, H, tol);
    if (m < 0) throw Error(ErrorKind::IndexRange, "m must be nonnegative");
    CMatrix G = kSqrt2 * inverse(A, tol) - kI * CMatrix::identity(A.rows());
    return C * matpow(G, m) * lu_solve(H, C.adjoint(), tol);
}

TruncatedSeries phi_coeffs_lossless(const CMatrix& C, const CMatrix& A, const CMatrix& H, std::size_t order,
                                    const Tolerances& tol) {
    require_lossless(A, H, tol);
    CMatrix Ai = inverse(A, tol);
    CMatrix HiC = lu_solve(H, C.adjoint(), tol);
    CMatrix G = kSqrt2 * Ai - kI * CMatrix::identity(A.rows());
    TruncatedSeries s;
    s.coeffs.push_back(0.5 * (C * HiC));
    CMatrix left = kSqrt2 * (C * Ai);
    for (std::size_t m = 1; m <= order; ++m) {
        s.coeffs.push_back(left * HiC);
        left = left * G;
    }
    return s;
}

std::size_t minimal_polynomial_degree(const CMatrix& A, const Tolerances& tol) {
    if (!A.square()) throw Error(ErrorKind::DimMismatch, "square matrix expected");
    const std::size_t N = A.rows();
    if (N == 0) return 0;
    CMatrix K(N * N, 0);
    CMatrix Ak = CMatrix::identity(N);
    for (std::size_t d = 0; d <= N; ++d) {
        double nrm = Ak.norm_fro();
        CMatrix col = nrm > 0 ? vec(Ak) / cd(nrm) : vec(Ak);
        CMatrix trial = hstack(K, col);
        if (rank(trial, tol) < d + 1) return d;
        K = trial;
        Ak = Ak * A;
    }
    return N;
}

std::vector<cd> moment_expansion_coeffs(const CMatrix& A, int n, const Tolerances& tol) {
    if (n < 0) throw Error(ErrorKind::IndexRange, "n must be nonnegative");
    const std::size_t N = A.rows();
    std::size_t d = minimal_polynomial_degree(A, tol);
    CMatrix target = kSqrt2 * matpow(inverse(shift(-kI * A, kSqrt2), tol), n + 1);
    CMatrix K(N * N, 0);
    CMatrix Ak = CMatrix::identity(N);
    for (std::size_t k = 0; k < d; ++k) {
        K = hstack(K, vec(Ak));
        Ak = Ak * A;
    }
    CMatrix x = least_squares(K, vec(target), tol);
    std::vector<cd> out;
    for (std::size_t k = 0; k < d; ++k) out.push_back(x(k, 0));
    return out;
}

CMatrix symmetric_similarity_check(const StateSpace& S1, const StateSpace& S2, const Tolerances& tol) {
    S1.validate();
    S2.validate();
    const std::size_t N = S1.states();
    if (S2.states() != N || S1.B.cols() != S2.C.rows() || S1.C.rows() != S2.B.cols())
        throw Error(ErrorKind::DimMismatch, "realizations are not comparable");
    CMatrix K1 = stack_powers_cols(S1.A, S1.B);
    CMatrix K2 = stack_powers_cols(S2.A.adjoint(), S2.C.adjoint());
    // S K1 = K2
    CMatrix S;
    try {
        S = least_squares(K1.adjoint(), K2.adjoint(), tol).adjoint();
    } catch (const Error&) {
        throw Error(ErrorKind::NotSimilar, "Krylov matrix is rank deficient");
    }
    double sc = scale_of({&S, &S1.A, &S2.A, &S1.C, &S2.B});
    double t = 100 * tol.eq_tol * sc * sc;
    if (dist(S * S1.A, S2.A.adjoint() * S) > t || dist(S, S.adjoint()) > t || dist(S1.C, S2.B.adjoint() * S) > t ||
        dist(S * S1.B, S2.C.adjoint()) > t)
        throw Error(ErrorKind::NotSimilar, "intertwining relations fail");
    return hermitian_part(S);
}

}  // namespace daft
