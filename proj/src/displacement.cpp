#include "daft/displacement.hpp"

namespace daft {

namespace {

std::size_t blocks(const CMatrix& F, std::size_t p) {
    if (p == 0 || !F.square() || F.rows() % p != 0) throw Error(ErrorKind::DimMismatch, "section size is not a multiple of p");
    return F.rows() / p;
}

void require_daf(const CMatrix& F, std::size_t p, const Tolerances& tol) {
    const std::size_t n = blocks(F, p);
    if (!is_hermitian(F, tol)) throw Error(ErrorKind::NotHermitian, "section is not Hermitian");
    const double sc = std::max(1.0, F.max_abs());
    for (std::size_t m = 0; m + 1 < n; ++m)
        for (std::size_t k = 0; k + 1 < n; ++k) {
            CMatrix r = F.block(m * p, k * p, p, p) + kI * F.block((m + 1) * p, k * p, p, p) -
                        kI * F.block(m * p, (k + 1) * p, p, p) - F.block((m + 1) * p, (k + 1) * p, p, p);
            if (r.max_abs() > tol.eq_tol * sc) throw Error(ErrorKind::NotDaf, "section violates the CR recurrence");
        }
}

CMatrix generator(const CMatrix& F, std::size_t p) {
    const std::size_t n = blocks(F, p);
    CMatrix V(2 * p, n * p);
    V.set_block(0, 0, 0.5 * F.block(0, 0, p, p));
    for (std::size_t k = 1; k < n; ++k)
        V.set_block(0, k * p, F.block(0, k * p, p, p) - kI * F.block(0, (k - 1) * p, p, p));
    V.set_block(p, 0, CMatrix::identity(p));
    return V;
}

}  // namespace

CMatrix shift_matrix(std::size_t N, std::size_t p) {
    CMatrix Z((N + 1) * p, (N + 1) * p);
    for (std::size_t i = 0; i + p < Z.rows(); ++i) Z(i, i + p) = 1.0;
    return Z;
}

CMatrix signature_matrix(std::size_t p) {
    CMatrix J(2 * p, 2 * p);
    J.set_block(0, p, CMatrix::identity(p));
    J.set_block(p, 0, CMatrix::identity(p));
    return J;
}

CMatrix displacement(const CMatrix& F, std::size_t p) {
    const std::size_t n = blocks(F, p);
    CMatrix Z = shift_matrix(n - 1, p);
    CMatrix Zs = Z.adjoint();
    return F + kI * (Zs * F) - kI * (F * Z) - Zs * F * Z;
}

DisplacementData displacement_decompose(const CMatrix& F, std::size_t p, const Tolerances& tol) {
    require_daf(F, p, tol);
    DisplacementData d;
    d.V = generator(F, p);
    d.J = signature_matrix(p);
    d.residual = dist(displacement(F, p), d.V.adjoint() * d.J * d.V);
    return d;
}

std::size_t displacement_rank(const CMatrix& F, std::size_t p, const Tolerances& tol) {
    return rank(displacement(F, p), tol);
}

std::function<CMatrix(cd)> theta(const CMatrix& F, std::size_t p, const Tolerances& tol) {
    DisplacementData d = displacement_decompose(F, p, tol);
    const std::size_t n = F.rows();
    CMatrix Z = shift_matrix(n / p - 1, p);
    CMatrix I = CMatrix::identity(n);
    // F^{-1} (I - Z)^{-*} V^* J, fixed for every lambda
    CMatrix right = lu_solve(F, lu_solve((I - Z).adjoint(), d.V.adjoint(), tol), tol) * d.J;
    CMatrix V = d.V;
    return [=](cd lambda) {
        CMatrix M = (1.0 + kI * lambda) * I - (kI + lambda) * Z;
        CMatrix body;
        try {
            body = lu_solve(M, right, tol);
        } catch (const Error&) {
            throw Error(ErrorKind::PoleAt, "Theta has a pole at lambda");
        }
        return CMatrix::identity(2 * p) - (1.0 - lambda) * (V * body);
    };
}

double theta_kernel_check(const CMatrix& F, std::size_t p, const std::function<CMatrix(cd)>& Th, cd lambda, cd nu,
                          const Tolerances& tol) {
    DisplacementData d = displacement_decompose(F, p, tol);
    const std::size_t n = F.rows();
    CMatrix Z = shift_matrix(n / p - 1, p);
    CMatrix I = CMatrix::identity(n);
    auto M = [&](cd z) { return (1.0 + kI * z) * I - (kI + z) * Z; };
    CMatrix left = lu_solve(M(lambda).adjoint(), d.V.adjoint(), tol).adjoint();  // V M(lambda)^{-1}
    CMatrix rightSide = lu_solve(M(nu).adjoint(), d.V.adjoint(), tol);          // M(nu)^{-*} V^*
    CMatrix kernel = left * lu_solve(F, rightSide, tol);
    cd den = 1.0 + kI * lambda - kI * std::conj(nu) - lambda * std::conj(nu);
    CMatrix tl = Th(lambda), tn = Th(nu);
    CMatrix diff = d.J - tl * d.J * tn.adjoint();
    if (std::abs(den) < tol.rank_tol) return diff.norm_inf();
    return (kernel - diff / den).norm_inf();
}

}  // namespace daft
