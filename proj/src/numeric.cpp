#include "daft/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace daft {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Singular: return "Singular";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotPSD: return "NotPSD";
        case ErrorKind::PoleAt: return "PoleAt";
        case ErrorKind::DimMismatch: return "DimMismatch";
        case ErrorKind::TooSmall: return "TooSmall";
        case ErrorKind::CornerMismatch: return "CornerMismatch";
        case ErrorKind::SpectrumClash: return "SpectrumClash";
        case ErrorKind::IndexRange: return "IndexRange";
        case ErrorKind::NotDaf: return "NotDaf";
        case ErrorKind::PreconditionFail: return "PreconditionFail";
        case ErrorKind::SpectrumOnCircle: return "SpectrumOnCircle";
        case ErrorKind::NotLossless: return "NotLossless";
        case ErrorKind::NotSimilar: return "NotSimilar";
        case ErrorKind::Unstable: return "Unstable";
        case ErrorKind::NotContraction: return "NotContraction";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::AmbiguousSource: return "AmbiguousSource";
    }
    return "Unknown";
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, cd fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cd>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(ErrorKind::DimMismatch, "ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::column(const std::vector<cd>& v) {
    CMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

CMatrix CMatrix::diag(const std::vector<cd>& v) {
    CMatrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i) m(i, i) = v[i];
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
}

CMatrix CMatrix::transpose() const {
    CMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

CMatrix CMatrix::conj() const {
    CMatrix t(*this);
    for (auto& v : t.data_) v = std::conj(v);
    return t;
}

CMatrix CMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorKind::DimMismatch, "block out of range");
    CMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void CMatrix::set_block(std::size_t r0, std::size_t c0, const CMatrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
        throw Error(ErrorKind::DimMismatch, "set_block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::DimMismatch, "matrix +");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::DimMismatch, "matrix -");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cd s) {
    for (auto& v : data_) v *= s;
    return *this;
}

double CMatrix::max_abs() const {
    double m = 0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double CMatrix::norm_inf() const {
    double m = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
        m = std::max(m, s);
    }
    return m;
}

double CMatrix::norm_fro() const {
    double s = 0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

cd CMatrix::trace() const {
    cd t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

bool CMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](cd v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator-(CMatrix a) { return a *= -1.0; }
CMatrix operator*(cd s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, cd s) { return a *= s; }
CMatrix operator/(CMatrix a, cd s) { return a *= (1.0 / s); }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorKind::DimMismatch, "matrix *");
    CMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            cd aik = a(i, k);
            if (aik == cd(0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

CMatrix shift(const CMatrix& a, cd s) {
    if (!a.square()) throw Error(ErrorKind::DimMismatch, "shift of non-square matrix");
    CMatrix r(a);
    for (std::size_t i = 0; i < a.rows(); ++i) r(i, i) += s;
    return r;
}

CMatrix hstack(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows()) throw Error(ErrorKind::DimMismatch, "hstack");
    CMatrix r(a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

CMatrix vstack(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.cols()) throw Error(ErrorKind::DimMismatch, "vstack");
    CMatrix r(a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return r;
}

CMatrix vec(const CMatrix& a) {
    CMatrix v(a.rows() * a.cols(), 1);
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) v(j * a.rows() + i, 0) = a(i, j);
    return v;
}

CMatrix unvec(const CMatrix& v, std::size_t rows, std::size_t cols) {
    if (v.rows() * v.cols() != rows * cols) throw Error(ErrorKind::DimMismatch, "unvec");
    CMatrix a(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) a(i, j) = v.data()[j * rows + i];
    return a;
}

CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

double dist(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::DimMismatch, "dist");
    double m = 0;
    for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

CMatrix matpow(const CMatrix& a, int k) {
    if (!a.square()) throw Error(ErrorKind::DimMismatch, "matpow of non-square matrix");
    CMatrix base = k < 0 ? inverse(a) : a;
    unsigned e = static_cast<unsigned>(k < 0 ? -k : k);
    CMatrix r = CMatrix::identity(a.rows());
    while (e) {
        if (e & 1u) r = r * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return r;
}

LU::LU(const CMatrix& a, const Tolerances& tol) : lu_(a), perm_(a.rows()) {
    if (!a.square()) throw Error(ErrorKind::DimMismatch, "LU of non-square matrix");
    const std::size_t n = a.rows();
    std::iota(perm_.begin(), perm_.end(), 0);
    double scale = a.max_abs();
    if (n == 0) return;
    if (scale == 0.0) throw Error(ErrorKind::Singular, "zero matrix");
    double max_piv = 0;
    double min_piv = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu_(i, k)) > best) {
                best = std::abs(lu_(i, k));
                piv = i;
            }
        if (best <= tol.rank_tol * scale * 1e-3 || best == 0.0)
            throw Error(ErrorKind::Singular, "pivot below threshold");
        max_piv = std::max(max_piv, best);
        min_piv = std::min(min_piv, best);
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
            std::swap(perm_[k], perm_[piv]);
            sign_ = -sign_;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            cd f = lu_(i, k) / lu_(k, k);
            lu_(i, k) = f;
            if (f == cd(0.0)) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
        }
    }
    min_ratio_ = min_piv / max_piv;
    if (min_ratio_ < tol.rank_tol) throw Error(ErrorKind::Singular, "pivot ratio below rank tolerance");
}

CMatrix LU::solve(const CMatrix& b) const {
    const std::size_t n = lu_.rows();
    if (b.rows() != n) throw Error(ErrorKind::DimMismatch, "LU solve rhs");
    CMatrix x(n, b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            cd s = b(perm_[i], c);
            for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x(j, c);
            x(i, c) = s;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            cd s = x(ii, c);
            for (std::size_t j = ii + 1; j < n; ++j) s -= lu_(ii, j) * x(j, c);
            x(ii, c) = s / lu_(ii, ii);
        }
    }
    return x;
}

cd LU::det() const {
    cd d = static_cast<double>(sign_);
    for (std::size_t i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
    return d;
}

CMatrix lu_solve(const CMatrix& a, const CMatrix& b, const Tolerances& tol) { return LU(a, tol).solve(b); }

CMatrix inverse(const CMatrix& a, const Tolerances& tol) {
    return LU(a, tol).solve(CMatrix::identity(a.rows()));
}

std::size_t rank(const CMatrix& a0, const Tolerances& tol) {
    CMatrix a(a0);
    const std::size_t r = a.rows(), c = a.cols();
    double first = 0;
    std::size_t k = 0;
    for (; k < std::min(r, c); ++k) {
        std::size_t pi = k, pj = k;
        double best = 0;
        for (std::size_t i = k; i < r; ++i)
            for (std::size_t j = k; j < c; ++j)
                if (std::abs(a(i, j)) > best) {
                    best = std::abs(a(i, j));
                    pi = i;
                    pj = j;
                }
        if (k == 0) first = best;
        if (best == 0.0 || best <= tol.rank_tol * first) break;
        for (std::size_t j = 0; j < c; ++j) std::swap(a(k, j), a(pi, j));
        for (std::size_t i = 0; i < r; ++i) std::swap(a(i, k), a(i, pj));
        for (std::size_t i = k + 1; i < r; ++i) {
            cd f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < c; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return k;
}

CMatrix range_basis(const CMatrix& a, const Tolerances& tol) {
    const std::size_t r = a.rows(), c = a.cols();
    std::vector<CMatrix> cols;
    for (std::size_t j = 0; j < c; ++j) cols.push_back(a.block(0, j, r, 1));
    std::vector<CMatrix> basis;
    double first = 0;
    std::vector<bool> used(c, false);
    for (std::size_t step = 0; step < std::min(r, c); ++step) {
        std::size_t best_j = c;
        double best = 0;
        for (std::size_t j = 0; j < c; ++j)
            if (!used[j] && cols[j].norm_fro() > best) {
                best = cols[j].norm_fro();
                best_j = j;
            }
        if (step == 0) first = best;
        if (best_j == c || best == 0.0 || best <= tol.rank_tol * first) break;
        used[best_j] = true;
        CMatrix q = cols[best_j] / cd(best);
        // second pass against accumulated rounding
        for (const auto& b : basis) q -= b * (b.adjoint() * q);
        q = q / cd(q.norm_fro());
        basis.push_back(q);
        for (std::size_t j = 0; j < c; ++j)
            if (!used[j]) cols[j] -= q * (q.adjoint() * cols[j]);
    }
    CMatrix Q(r, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) Q.set_block(0, j, basis[j]);
    return Q;
}

CMatrix least_squares(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
    if (a.rows() != b.rows()) throw Error(ErrorKind::DimMismatch, "least_squares");
    // Modified Gram-Schmidt QR with reorthogonalization; a must have full column rank.
    const std::size_t m = a.rows(), n = a.cols();
    CMatrix Q(a);
    CMatrix R(n, n);
    double first = 0;
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t i = 0; i < j; ++i) {
                cd s = 0;
                for (std::size_t k = 0; k < m; ++k) s += std::conj(Q(k, i)) * Q(k, j);
                R(i, j) += s;
                for (std::size_t k = 0; k < m; ++k) Q(k, j) -= s * Q(k, i);
            }
        double nrm = 0;
        for (std::size_t k = 0; k < m; ++k) nrm += std::norm(Q(k, j));
        nrm = std::sqrt(nrm);
        if (j == 0) first = std::max(nrm, 1e-300);
        if (nrm <= tol.rank_tol * first * 1e-3) throw Error(ErrorKind::Singular, "rank-deficient least squares");
        R(j, j) = nrm;
        for (std::size_t k = 0; k < m; ++k) Q(k, j) /= nrm;
    }
    CMatrix y = Q.adjoint() * b;
    CMatrix x(n, b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c)
        for (std::size_t i = n; i-- > 0;) {
            cd s = y(i, c);
            for (std::size_t j = i + 1; j < n; ++j) s -= R(i, j) * x(j, c);
            x(i, c) = s / R(i, i);
        }
    return x;
}

bool is_hermitian(const CMatrix& a, const Tolerances& tol) {
    if (!a.square()) return false;
    return dist(a, a.adjoint()) <= tol.eq_tol * std::max(1.0, a.max_abs());
}

EigResult hermitian_eig(const CMatrix& a0, const Tolerances& tol) {
    if (!is_hermitian(a0, tol)) throw Error(ErrorKind::NotHermitian, "hermitian_eig input");
    const std::size_t n = a0.rows();
    CMatrix a = hermitian_part(a0);
    CMatrix v = CMatrix::identity(n);
    const double fro = std::max(a.norm_fro(), 1e-300);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += std::norm(a(i, j));
        if (std::sqrt(off) <= 1e-15 * fro) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                cd apq = a(p, q);
                double mag = std::abs(apq);
                if (mag <= 1e-300) continue;
                cd ph = apq / mag;
                double app = a(p, p).real(), aqq = a(q, q).real();
                double tau = (aqq - app) / (2 * mag);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                double c = 1 / std::sqrt(1 + t * t), s = t * c;
                // G = diag-phase times real rotation; columns p,q of G
                cd gpp = c, gpq = s, gqp = -s * std::conj(ph), gqq = c * std::conj(ph);
                for (std::size_t k = 0; k < n; ++k) {
                    cd akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    cd apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    cd vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
            }
    }
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
    EigResult r;
    r.vectors = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        r.values.push_back(a(idx[k], idx[k]).real());
        for (std::size_t i = 0; i < n; ++i) r.vectors(i, k) = v(i, idx[k]);
    }
    return r;
}

namespace {
double spectral_scale(const std::vector<double>& ev) {
    double s = 0;
    for (double v : ev) s = std::max(s, std::abs(v));
    return s;
}
}  // namespace

PsdResult psd_check(const CMatrix& a, const Tolerances& tol) {
    PsdResult r;
    r.eigenvalues = hermitian_eig(a, tol).values;
    double thr = -tol.psd_tol * spectral_scale(r.eigenvalues);
    for (double v : r.eigenvalues)
        if (v < thr) ++r.negatives;
    r.psd = r.negatives == 0;
    return r;
}

Inertia inertia(const CMatrix& a, const Tolerances& tol) {
    auto ev = hermitian_eig(a, tol).values;
    double band = tol.psd_tol * spectral_scale(ev);
    Inertia in;
    for (double v : ev) {
        if (v > band)
            ++in.positive;
        else if (v < -band)
            ++in.negative;
        else
            ++in.zero;
    }
    return in;
}

CMatrix sqrt_psd(const CMatrix& a, const Tolerances& tol) {
    auto e = hermitian_eig(a, tol);
    double thr = -tol.psd_tol * spectral_scale(e.values);
    std::vector<cd> root;
    for (double v : e.values) {
        if (v < thr) throw Error(ErrorKind::NotPSD, "negative eigenvalue in sqrt_psd");
        root.emplace_back(std::sqrt(std::max(v, 0.0)));
    }
    CMatrix s = e.vectors * CMatrix::diag(root) * e.vectors.adjoint();
    return hermitian_part(s);
}

double spectral_radius_proxy(const CMatrix& a, int k) {
    if (!a.square()) throw Error(ErrorKind::DimMismatch, "spectral_radius_proxy needs a square matrix");
    if (k < 1) throw Error(ErrorKind::IndexRange, "power must be positive");
    if (a.rows() == 0) return 0.0;
    // renormalize every step so large k neither overflows nor underflows
    CMatrix p = CMatrix::identity(a.rows());
    double log_norm = 0.0;
    for (int i = 0; i < k; ++i) {
        p = p * a;
        double s = p.norm_fro();
        if (s == 0.0) return 0.0;
        log_norm += std::log(s);
        p = p / cd(s);
    }
    return std::exp(log_norm / k);
}

CMatrix circle_quadrature(const std::function<CMatrix(double)>& g, std::size_t nodes) {
    CMatrix acc;
    for (std::size_t k = 0; k < nodes; ++k) {
        double t = 2 * kPi * static_cast<double>(k) / static_cast<double>(nodes);
        if (k == 0)
            acc = g(t);
        else
            acc += g(t);
    }
    return acc / cd(static_cast<double>(nodes));
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

}  // namespace daft
