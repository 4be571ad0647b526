#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "daft/displacement.hpp"
#include "daft/io.hpp"
#include "daft/lattice.hpp"
#include "daft/moebius.hpp"
#include "daft/moments.hpp"
#include "daft/realization.hpp"
#include "daft/spectral.hpp"

using namespace daft;
using io::json;

namespace {

struct Options {
    std::string command, in, out;
    int order = 6;
    std::size_t nodes = 2048;
    double tol = -1;
    bool oracle = false;
};

struct Result {
    std::string text;
    bool pass = true;
};

double scaled(double residual, double scale) { return residual / std::max(1.0, scale); }

int int_field(const json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw Error(ErrorKind::ParseError, std::string("'") + key + "' must be a nonnegative integer");
    return v.get<int>();
}

double real_field(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw Error(ErrorKind::ParseError, std::string("'") + key + "' must be a number");
    return j.at(key).get<double>();
}

std::string string_field(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string())
        throw Error(ErrorKind::ParseError, std::string("'") + key + "' must be a string");
    return j.at(key).get<std::string>();
}

std::vector<cd> points_field(const json& j, const char* key, std::vector<cd> fallback) {
    if (!j.contains(key)) return fallback;
    std::vector<cd> pts;
    for (const auto& p : j.at(key)) pts.push_back(io::complex_from_json(p));
    return pts;
}

json inertia_json(const Inertia& in) {
    json o = json::object();
    o["positive"] = in.positive;
    o["negative"] = in.negative;
    o["zero"] = in.zero;
    return o;
}

int count_sources(const json& j, std::initializer_list<const char*> keys) {
    int n = 0;
    for (const char* k : keys) n += j.contains(k) ? 1 : 0;
    return n;
}

std::vector<cd> default_points() {
    std::vector<cd> pts;
    for (int k = 0; k < 10; ++k) pts.push_back(std::polar(0.5 + 0.04 * k, 0.7 * k + 0.3));
    return pts;
}

// f(m,n) from the moments of an atomic measure, a route that never touches the kernel K^m conj(K)^n
CMatrix measure_moment_oracle(const AtomicMeasure& mu, int m, int n) {
    CMatrix f(mu.p, mu.p);
    for (int j = 0; j <= m; ++j)
        for (int k = 0; k <= n; ++k) {
            cd c = binomial(m, j) * binomial(n, k) * std::pow(kSqrt2, j + k) * std::pow(-kI, m - j) * std::pow(kI, n - k);
            f += c * trig_moment(mu, j - k);
        }
    return 2.0 * f;
}

CMatrix density_sample(const SpectralFactor& w, double t, const Tolerances& tol) {
    CMatrix v = factor_eval(w, std::exp(cd(0, t)), tol);
    return v * v.adjoint();
}

CMatrix quadrature_f(const SpectralFactor& w, int m, int n, std::size_t nodes, const Tolerances& tol) {
    return 2.0 * circle_quadrature(
                     [&](double t) {
                         cd k1 = kSqrt2 * std::exp(cd(0, -t)) - kI, k2 = kSqrt2 * std::exp(cd(0, t)) + kI;
                         return std::pow(k1, m) * std::pow(k2, n) * density_sample(w, t, tol);
                     },
                     nodes);
}

CMatrix quadrature_fourier(const SpectralFactor& w, int k, std::size_t nodes, const Tolerances& tol) {
    return circle_quadrature([&](double t) { return std::exp(cd(0, -k * t)) * density_sample(w, t, tol); }, nodes);
}

CMatrix section_from(const json& j, const char* key_section, std::size_t& p) {
    p = static_cast<std::size_t>(int_field(j, "p", 1));
    if (count_sources(j, {"section", "grid"}) != 1)
        throw Error(ErrorKind::AmbiguousSource, "give exactly one of 'section' or 'grid'");
    if (j.contains(key_section)) return io::matrix_from_json(j.at(key_section));
    DafGrid g = io::grid_from_json(j.at("grid"));
    p = g.p();
    int N = int_field(j, "N", static_cast<int>(std::min(g.M(), g.N())));
    return finite_section(g, static_cast<std::size_t>(N));
}

// check

Result cmd_check(const json& j, const Options&, const Tolerances& tol) {
    DafGrid g = io::grid_from_json(j);
    json out = json::object();
    out["command"] = "check";
    out["formula"] = "discrete-cauchy-riemann";
    double cr = (g.M() >= 1 && g.N() >= 1) ? cr_residual(g) : 0.0;
    double sc = g.max_norm();
    out["cr_residual"] = cr;
    out["relative_cr_residual"] = scaled(cr, sc);
    bool square = g.p() == g.q();
    if (square) {
        double sym = symmetry_residual(g);
        out["symmetry_residual"] = sym;
        out["symmetric"] = sym <= tol.eq_tol * std::max(1.0, sc);
        json sections = json::array();
        for (std::size_t K = 0; K <= std::min(g.M(), g.N()); ++K) {
            CMatrix F = hermitian_part(finite_section(g, K));
            json s = json::object();
            s["K"] = K;
            s["psd"] = psd_check(F, tol).psd;
            s["inertia"] = inertia_json(inertia(F, tol));
            sections.push_back(std::move(s));
        }
        out["sections"] = std::move(sections);
    }
    bool pass = scaled(cr, sc) <= tol.eq_tol;
    out["pass"] = pass;
    return {io::dump(out), pass};
}

// extend

Result cmd_extend(const json& j, const Options& opt, const Tolerances& tol) {
    io::reject_unknown_keys(j, {"boundary", "measure", "factor", "M", "N"});
    if (count_sources(j, {"boundary", "measure", "factor"}) != 1)
        throw Error(ErrorKind::AmbiguousSource, "give exactly one of 'boundary', 'measure' or 'factor'");
    const int M = int_field(j, "M", opt.order), N = int_field(j, "N", opt.order);
    json out = json::object();
    out["command"] = "extend";
    DafGrid g(1, 1, 0, 0);
    json oracle = nullptr;
    bool pass = true;
    if (j.contains("boundary")) {
        const json& b = j.at("boundary");
        io::reject_unknown_keys(b, {"row", "col"});
        std::vector<CMatrix> row, col;
        for (const auto& v : b.at("row")) row.push_back(io::matrix_from_json(v));
        for (const auto& v : b.at("col")) col.push_back(io::matrix_from_json(v));
        g = extend_from_boundary(row, col, tol);
        out["route"] = "boundary";
        out["formula"] = "cauchy-riemann-fill";
    } else if (j.contains("measure")) {
        AtomicMeasure mu = io::measure_from_json(j.at("measure"));
        g = grid_from_measure(mu, static_cast<std::size_t>(M), static_cast<std::size_t>(N));
        out["route"] = "measure";
        out["formula"] = "measure-kernel-moments";
        double worst = 0;
        for (int m = 0; m <= M; ++m)
            for (int n = 0; n <= N; ++n)
                worst = std::max(worst, scaled(dist(g.at(m, n), measure_moment_oracle(mu, m, n)), g.max_norm()));
        oracle = json::object();
        oracle["method"] = "trigonometric-moment-expansion";
        oracle["relative_residual"] = worst;
        pass = pass && worst <= 1e-10;
    } else {
        SpectralFactor w = io::factor_from_json(j.at("factor"));
        g = symmetric_extension_grid(w, static_cast<std::size_t>(M), static_cast<std::size_t>(N), tol);
        out["route"] = "factor";
        out["formula"] = "dilation-compression-sum";
        double worst = 0;
        for (int m = 0; m <= M; ++m)
            for (int n = 0; n <= N; ++n)
                worst = std::max(worst, scaled(dist(g.at(m, n), quadrature_f(w, m, n, opt.nodes, tol)), g.max_norm()));
        oracle = json::object();
        oracle["method"] = "circle-quadrature";
        oracle["nodes"] = opt.nodes;
        oracle["relative_residual"] = worst;
        pass = pass && worst <= 1e-7;
    }
    double cr = (g.M() >= 1 && g.N() >= 1) ? cr_residual(g) : 0.0;
    out["cr_residual"] = cr;
    out["relative_cr_residual"] = scaled(cr, g.max_norm());
    pass = pass && scaled(cr, g.max_norm()) <= tol.eq_tol;
    if (!oracle.is_null()) out["oracle"] = oracle;
    out["grid"] = io::to_json(g);
    out["pass"] = pass;
    return {io::dump(out), pass};
}

// toeplitz

Result cmd_toeplitz(const json& j, const Options&, const Tolerances& tol) {
    io::reject_unknown_keys(j, {"grid", "moments", "N"});
    if (count_sources(j, {"grid", "moments"}) != 1)
        throw Error(ErrorKind::AmbiguousSource, "give exactly one of 'grid' or 'moments'");
    json out = json::object();
    out["command"] = "toeplitz";
    out["formula"] = "triangular-congruence";
    CMatrix F, T;
    std::size_t p;
    double roundtrip;
    if (j.contains("grid")) {
        DafGrid g = io::grid_from_json(j.at("grid"));
        p = g.p();
        int N = int_field(j, "N", static_cast<int>(std::min(g.M(), g.N())));
        F = finite_section(g, static_cast<std::size_t>(N));
        T = toeplitz_from_daf(F, p);
        roundtrip = scaled(dist(daf_from_toeplitz(T, p), F), F.max_abs());
        out["direction"] = "daf-to-toeplitz";
        out["N"] = N;
    } else {
        MomentSequence Ms;
        for (const auto& v : j.at("moments")) Ms.push_back(io::matrix_from_json(v));
        if (Ms.empty()) throw Error(ErrorKind::ParseError, "'moments' is empty");
        p = Ms[0].rows();
        int N = int_field(j, "N", static_cast<int>(Ms.size()) - 1);
        T = toeplitz_from_moments(Ms, static_cast<std::size_t>(N));
        F = daf_from_toeplitz(T, p);
        roundtrip = scaled(dist(toeplitz_from_daf(F, p), T), T.max_abs());
        out["direction"] = "toeplitz-to-daf";
        out["N"] = N;
    }
    Inertia iF = inertia(hermitian_part(F), tol), iT = inertia(hermitian_part(T), tol);
    out["F"] = io::to_json(F);
    out["T"] = io::to_json(T);
    out["inertia_F"] = inertia_json(iF);
    out["inertia_T"] = inertia_json(iT);
    out["inertia_match"] = iF == iT;
    out["roundtrip_residual"] = roundtrip;
    bool pass = iF == iT && roundtrip <= tol.eq_tol;
    out["pass"] = pass;
    return {io::dump(out), pass};
}

// onestep

Result cmd_onestep(const json& j, const Options&, const Tolerances& tol) {
    io::reject_unknown_keys(j, {"section", "grid", "N", "p", "direction", "radius_max", "steps", "lambdas"});
    std::size_t p;
    CMatrix F = section_from(j, "section", p);
    if (!psd_check(hermitian_part(F), tol).psd) throw Error(ErrorKind::NotPSD, "input section is not PSD");
    cd dir = j.contains("direction") ? io::complex_from_json(j.at("direction")) : cd(1.0);
    if (std::abs(dir) == 0.0) throw Error(ErrorKind::ParseError, "'direction' must be nonzero");
    dir /= std::abs(dir);
    const double rmax = real_field(j, "radius_max", 10.0);
    const int steps = std::max(1, int_field(j, "steps", 64));
    auto classify = [&](cd lam) { return one_step_fill(F, p, lam * CMatrix::identity(p), tol).classification; };

    std::ostringstream csv;
    csv << "kind,lambda,admissible,negatives\n";
    auto emit = [&](const char* kind, cd lam, const PsdResult& r) {
        csv << kind << "," << io::csv_escape(io::format_complex_csv(lam)) << "," << (r.psd ? "true" : "false") << ","
            << r.negatives << "\n";
    };
    for (cd lam : points_field(j, "lambdas", {})) emit("point", lam, classify(lam));
    std::vector<double> radii;
    std::vector<bool> adm;
    for (int s = 0; s <= steps; ++s) {
        double r = rmax * s / steps;
        auto c = classify(r * dir);
        radii.push_back(r);
        adm.push_back(c.psd);
        emit("sample", r * dir, c);
    }
    // the admissible set is convex, so each sign change brackets one boundary crossing
    for (std::size_t s = 0; s + 1 < radii.size(); ++s) {
        if (adm[s] == adm[s + 1]) continue;
        double lo = radii[s], hi = radii[s + 1];
        for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
            double mid = 0.5 * (lo + hi);
            (classify(mid * dir).psd == adm[s] ? lo : hi) = mid;
        }
        double edge = adm[s] ? lo : hi;
        emit("boundary", edge * dir, classify(edge * dir));
    }
    return {csv.str(), true};
}

// realize

Result cmd_realize(const json& j, const Options& opt, const Tolerances& tol) {
    io::reject_unknown_keys(j, {"op", "system", "H", "P", "L", "W", "points"});
    const std::string op = string_field(j, "op");
    StateSpace S = io::state_space_from_json(j.at("system"));
    json out = json::object();
    out["command"] = "realize";
    out["op"] = op;
    bool pass = true;
    auto need_H = [&]() {
        if (!j.contains("H")) throw Error(ErrorKind::ParseError, "op '" + op + "' needs 'H'");
        return io::matrix_from_json(j.at("H"));
    };
    const double sc = std::max({1.0, S.A.max_abs(), S.B.max_abs(), S.C.max_abs(), S.D.max_abs()});
    if (op == "eval") {
        json rows = json::array();
        for (cd z : points_field(j, "points", default_points())) {
            json r = json::object();
            r["lambda"] = io::to_json(z);
            r["value"] = io::to_json(eval(S, z, tol));
            r["formula"] = "transfer-evaluation";
            rows.push_back(std::move(r));
        }
        out["rows"] = std::move(rows);
    } else if (op == "minimal") {
        out["states"] = S.states();
        out["observability_rank"] = observability_rank(S.C, S.A, tol);
        out["controllability_rank"] = controllability_rank(S.A, S.B, tol);
        out["minimal"] = is_minimal(S, tol);
        out["formula"] = "kalman-rank-test";
    } else if (op == "lossless-check") {
        CMatrix H = need_H();
        auto cert = lossless_check(S, H, tol);
        json res = json::array();
        for (double r : cert.residuals) res.push_back(r);
        out["residuals"] = std::move(res);
        out["formula"] = "lossless-realization-identities";
        pass = cert.ok(tol.eq_tol * sc * sc * std::max(1.0, H.max_abs()));
        if (pass) {
            json rows = json::array();
            for (int m = 0; m <= opt.order; ++m) {
                json r = json::object();
                r["m"] = m;
                r["value"] = io::to_json(f_row_lossless(S.C, S.A, H, m, tol));
                r["formula"] = "lossless-boundary-row";
                rows.push_back(std::move(r));
            }
            out["rows"] = std::move(rows);
        }
    } else if (op == "boundary-row") {
        StateSpace S0 = phiL_realization_from_phi(S, tol);
        json rows = json::array();
        double worst = 0;
        for (int m = 0; m <= opt.order; ++m) {
            CMatrix a = f_row_from_phiL_realization(S, m, tol), b = f_row_from_PhiL_realization(S0, m, tol);
            worst = std::max(worst, scaled(dist(a, b), a.max_abs()));
            json r = json::object();
            r["m"] = m;
            r["value"] = io::to_json(a);
            r["formula"] = "characteristic-realization-row";
            rows.push_back(std::move(r));
        }
        out["rows"] = std::move(rows);
        out["route_gap"] = worst;
        pass = worst <= 1e-10;
    } else if (op == "cayley") {
        CMatrix H = need_H();
        StateSpace Sch = cayley_schur(S, H, tol);
        auto phi = cara_from_unitary(S.C, S.A, H, S.D, tol);
        const std::size_t p = S.D.rows();
        double worst = 0;
        for (cd z : points_field(j, "points", default_points())) {
            CMatrix f = phi(z);
            CMatrix direct = (f - CMatrix::identity(p)) * inverse(f + CMatrix::identity(p), tol);
            worst = std::max(worst, dist(eval(Sch, z, tol), direct));
        }
        out["schur"] = io::to_json(Sch);
        out["formula"] = "cayley-transform-realization";
        out["pointwise_residual"] = worst;
        pass = worst <= 1e-10;
    } else if (op == "kyp") {
        if (!j.contains("P") || !j.contains("L") || !j.contains("W"))
            throw Error(ErrorKind::ParseError, "op 'kyp' needs 'P', 'L' and 'W'");
        KypCertificate cert{io::matrix_from_json(j.at("P")), io::matrix_from_json(j.at("L")),
                            io::matrix_from_json(j.at("W"))};
        if (cert.L.rows() == 0) cert.L = CMatrix(S.states(), 0);
        if (cert.W.rows() == 0) cert.W = CMatrix(S.D.rows(), cert.L.cols());
        auto r = kyp_verify(S, cert);
        json res = json::array();
        for (double v : r) res.push_back(v);
        out["residuals"] = std::move(res);
        out["formula"] = "kalman-yakubovich-popov";
        pass = std::max({r[0], r[1], r[2]}) <= tol.eq_tol * sc * sc;
    } else {
        throw Error(ErrorKind::ParseError, "unknown realize op '" + op + "'");
    }
    out["pass"] = pass;
    return {io::dump(out), pass};
}

// spectral

Result cmd_spectral(const json& j, const Options& opt, const Tolerances& tol) {
    io::reject_unknown_keys(j, {"op", "factor", "points"});
    const std::string op = string_field(j, "op");
    SpectralFactor w = io::factor_from_json(j.at("factor"));
    json out = json::object();
    out["command"] = "spectral";
    out["op"] = op;
    bool pass = true;
    double oracle_worst = 0;
    if (op == "stein") {
        CMatrix X = stein_solve(w.a, w.b, tol);
        CMatrix Q = w.b * w.b.adjoint();
        out["X"] = io::to_json(X);
        out["formula"] = "stein-gramian";
        out["residual"] = scaled(dist(X - w.a * X * w.a.adjoint(), Q), Q.max_abs());
        pass = out["residual"].get<double>() <= 1e-12;
    } else if (op == "fourier") {
        StateSpace Sd = density_realization(w, tol);
        CMatrix P = riesz_projection(Sd.A, 256, tol);
        json rows = json::array();
        double gap = 0;
        for (int k = 0; k <= opt.order; ++k) {
            CMatrix r = fourier_coeffs_factor(w, k, tol);
            gap = std::max(gap, scaled(dist(r, fourier_coeffs_realization(Sd, P, k, tol)), r.max_abs()));
            json row = json::object();
            row["k"] = k;
            row["value"] = io::to_json(r);
            row["formula"] = "fourier-coefficient-factor";
            if (opt.oracle) {
                double e = scaled(dist(r, quadrature_fourier(w, k, opt.nodes, tol)), r.max_abs());
                row["oracle_residual"] = e;
                oracle_worst = std::max(oracle_worst, e);
            }
            rows.push_back(std::move(row));
        }
        out["rows"] = std::move(rows);
        out["route_gap"] = gap;
        pass = gap <= 1e-8;
    } else if (op == "cara") {
        json rows = json::array();
        for (cd z : points_field(j, "points", default_points())) {
            json row = json::object();
            row["lambda"] = io::to_json(z);
            row["value"] = io::to_json(cara_from_factor(w, z, tol));
            row["formula"] = "caratheodory-from-factor";
            rows.push_back(std::move(row));
        }
        out["rows"] = std::move(rows);
    } else if (op == "row") {
        StateSpace Sd = density_realization(w, tol);
        CMatrix P = riesz_projection(Sd.A, 256, tol);
        json rows = json::array();
        double gap = 0;
        for (int m = 0; m <= opt.order; ++m) {
            CMatrix a = f_row_from_factor(w, m, tol);
            gap = std::max(gap, scaled(dist(a, f_row_from_density(Sd, P, m, tol)), a.max_abs()));
            json row = json::object();
            row["m"] = m;
            row["value"] = io::to_json(a);
            row["formula"] = "boundary-row-from-factor";
            if (opt.oracle) {
                double e = scaled(dist(a, quadrature_f(w, m, 0, opt.nodes, tol)), a.max_abs());
                row["oracle_residual"] = e;
                oracle_worst = std::max(oracle_worst, e);
            }
            rows.push_back(std::move(row));
        }
        out["rows"] = std::move(rows);
        out["route_gap"] = gap;
        pass = gap <= 1e-8;
    } else if (op == "extend") {
        const std::size_t K = static_cast<std::size_t>(opt.order);
        DafGrid g = symmetric_extension_grid(w, K, K, tol);
        double cr = K >= 1 ? scaled(cr_residual(g), g.max_norm()) : 0.0;
        out["formula"] = "dilation-compression-sum";
        out["relative_cr_residual"] = cr;
        out["symmetry_residual"] = scaled(symmetry_residual(g), g.max_norm());
        if (opt.oracle) {
            for (std::size_t m = 0; m <= K; ++m)
                for (std::size_t n = 0; n <= K; ++n)
                    oracle_worst = std::max(oracle_worst, scaled(dist(g.at(m, n), quadrature_f(w, static_cast<int>(m), static_cast<int>(n), opt.nodes, tol)), g.max_norm()));
            out["oracle_residual"] = oracle_worst;
        }
        out["grid"] = io::to_json(g);
        pass = cr <= tol.eq_tol;
    } else if (op == "kyp") {
        FactorKyp fk = kyp_certificate_for_factor(w, tol);
        auto r = kyp_verify(fk.phi, fk.cert);
        out["phi"] = io::to_json(fk.phi);
        out["P"] = io::to_json(fk.cert.P);
        out["L"] = io::to_json(fk.cert.L);
        json res = json::array();
        for (double v : r) res.push_back(v);
        out["residuals"] = std::move(res);
        out["formula"] = "kalman-yakubovich-popov-factor";
        pass = std::max({r[0], r[1], r[2]}) <= 1e-10;
    } else {
        throw Error(ErrorKind::ParseError, "unknown spectral op '" + op + "'");
    }
    if (opt.oracle && (op == "fourier" || op == "row" || op == "extend")) {
        out["oracle_nodes"] = opt.nodes;
        out["oracle_worst"] = oracle_worst;
        pass = pass && oracle_worst <= 1e-7;
    }
    out["pass"] = pass;
    return {io::dump(out), pass};
}

// displace

Result cmd_displace(const json& j, const Options&, const Tolerances& tol) {
    io::reject_unknown_keys(j, {"section", "grid", "N", "p", "pairs"});
    std::size_t p;
    CMatrix F = section_from(j, "section", p);
    DisplacementData d = displacement_decompose(F, p, tol);
    std::size_t r = displacement_rank(F, p, tol);
    json out = json::object();
    out["command"] = "displace";
    out["formula"] = "displacement-generator";
    out["V"] = io::to_json(d.V);
    out["J"] = io::to_json(d.J);
    out["residual"] = d.residual;
    out["relative_residual"] = scaled(d.residual, F.max_abs());
    out["rank"] = r;
    out["rank_bound"] = 2 * p;
    bool pass = scaled(d.residual, F.max_abs()) <= 1e-12 && r <= 2 * p;
    try {
        auto Th = theta(F, p, tol);
        std::vector<std::pair<cd, cd>> pairs;
        if (j.contains("pairs"))
            for (const auto& pr : j.at("pairs")) {
                if (!pr.is_array() || pr.size() != 2) throw Error(ErrorKind::ParseError, "'pairs' entries are [lambda, nu]");
                pairs.emplace_back(io::complex_from_json(pr[0]), io::complex_from_json(pr[1]));
            }
        else
            for (cd z : default_points()) pairs.emplace_back(z, 0.8 * std::conj(z) - 0.1);
        double worst = 0;
        for (auto [l, n] : pairs) worst = std::max(worst, theta_kernel_check(F, p, Th, l, n, tol));
        json th = json::object();
        th["formula"] = "theta-kernel-identity";
        th["pairs"] = pairs.size();
        th["residual"] = worst;
        out["theta"] = std::move(th);
        pass = pass && worst <= 1e-9;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Singular) throw;
        out["theta"] = "skipped: section is singular";
    }
    out["pass"] = pass;
    return {io::dump(out), pass};
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"Discrete analytic function toolkit"};
    app.add_option("command", opt.command, "check | extend | toeplitz | onestep | realize | spectral | displace")
        ->required()
        ->check(CLI::IsMember({"check", "extend", "toeplitz", "onestep", "realize", "spectral", "displace"}));
    app.add_option("--in", opt.in, "input JSON file")->required();
    app.add_option("--out", opt.out, "output file (default stdout)");
    app.add_option("--order", opt.order, "truncation order or grid size")->check(CLI::NonNegativeNumber);
    app.add_option("--nodes", opt.nodes, "quadrature nodes for oracles")->check(CLI::PositiveNumber);
    app.add_option("--tol", opt.tol, "equality tolerance (overrides DAFT_TOL)")->check(CLI::PositiveNumber);
    app.add_flag("--oracle", opt.oracle, "re-derive results by circle quadrature");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Tolerances tol;
    if (const char* env = std::getenv("DAFT_TOL")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v > 0)) {
            std::cerr << "error: DAFT_TOL must be a positive number\n";
            return 2;
        }
        tol.eq_tol = v;
    }
    if (opt.tol > 0) tol.eq_tol = opt.tol;

    try {
        std::ifstream f(opt.in);
        if (!f) throw Error(ErrorKind::ParseError, "cannot open " + opt.in);
        json j;
        try {
            j = json::parse(f);
        } catch (const json::exception& e) {
            throw Error(ErrorKind::ParseError, e.what());
        }
        Result r;
        try {
            if (opt.command == "check") r = cmd_check(j, opt, tol);
            else if (opt.command == "extend") r = cmd_extend(j, opt, tol);
            else if (opt.command == "toeplitz") r = cmd_toeplitz(j, opt, tol);
            else if (opt.command == "onestep") r = cmd_onestep(j, opt, tol);
            else if (opt.command == "realize") r = cmd_realize(j, opt, tol);
            else if (opt.command == "spectral") r = cmd_spectral(j, opt, tol);
            else r = cmd_displace(j, opt, tol);
        } catch (const json::exception& e) {
            throw Error(ErrorKind::ParseError, e.what());
        }
        if (opt.out.empty()) {
            std::cout << r.text;
        } else {
            std::ofstream o(opt.out);
            if (!o) throw Error(ErrorKind::ParseError, "cannot write " + opt.out);
            o << r.text;
        }
        return r.pass ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
