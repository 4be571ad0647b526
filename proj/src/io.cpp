#include "daft/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace daft::io {

json to_json(cd z) { return json::array({z.real(), z.imag()}); }

json to_json(const CMatrix& a) {
    json rows = json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < a.cols(); ++j) r.push_back(to_json(a(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

json to_json(const DafGrid& g) {
    json f = json::array();
    for (std::size_t m = 0; m <= g.M(); ++m) {
        json r = json::array();
        for (std::size_t n = 0; n <= g.N(); ++n) r.push_back(to_json(g.at(m, n)));
        f.push_back(std::move(r));
    }
    json out = json::object();
    out["p"] = g.p();
    out["q"] = g.q();
    out["f"] = std::move(f);
    return out;
}

json to_json(const AtomicMeasure& mu) {
    json atoms = json::array();
    for (const auto& a : mu.atoms) {
        json o = json::object();
        o["theta"] = a.theta;
        o["weight"] = to_json(a.weight);
        atoms.push_back(std::move(o));
    }
    json out = json::object();
    out["p"] = mu.p;
    out["atoms"] = std::move(atoms);
    return out;
}

json to_json(const StateSpace& S) {
    json out = json::object();
    out["A"] = to_json(S.A);
    out["B"] = to_json(S.B);
    out["C"] = to_json(S.C);
    out["D"] = to_json(S.D);
    out["center"] = S.center == Center::Infinity ? "inf" : "zero";
    return out;
}

json to_json(const SpectralFactor& w) {
    json out = json::object();
    out["a"] = to_json(w.a);
    out["b"] = to_json(w.b);
    out["c"] = to_json(w.c);
    out["d"] = to_json(w.d);
    return out;
}

cd complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw Error(ErrorKind::ParseError, "expected a number or [re, im], got " + j.dump());
}

CMatrix matrix_from_json(const json& j) {
    if (j.is_number()) return CMatrix::scalar(j.get<double>());
    if (!j.is_array()) throw Error(ErrorKind::ParseError, "expected a matrix, got " + j.dump());
    if (j.empty()) return CMatrix(0, 0);
    // a bare [re, im] pair is a 1x1 matrix
    if (j.size() == 2 && j[0].is_number() && j[1].is_number()) return CMatrix::scalar(complex_from_json(j));
    const std::size_t r = j.size();
    if (!j[0].is_array()) throw Error(ErrorKind::ParseError, "matrix rows must be arrays");
    const std::size_t c = j[0].size();
    CMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (!j[i].is_array() || j[i].size() != c) throw Error(ErrorKind::ParseError, "ragged matrix rows");
        for (std::size_t k = 0; k < c; ++k) a(i, k) = complex_from_json(j[i][k]);
    }
    return a;
}

namespace {

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing key '") + key + "'");
    return j.at(key);
}

std::size_t size_field(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw Error(ErrorKind::ParseError, std::string("'") + key + "' must be a nonnegative integer");
    return v.get<std::size_t>();
}

}  // namespace

DafGrid grid_from_json(const json& j) {
    reject_unknown_keys(j, {"p", "q", "f"});
    const json& f = need(j, "f");
    if (!f.is_array() || f.empty() || !f[0].is_array() || f[0].empty())
        throw Error(ErrorKind::ParseError, "'f' must be a nonempty array of rows");
    const std::size_t M = f.size() - 1, N = f[0].size() - 1;
    CMatrix first = matrix_from_json(f[0][0]);
    std::size_t p = j.contains("p") ? size_field(j, "p") : first.rows();
    std::size_t q = j.contains("q") ? size_field(j, "q") : first.cols();
    DafGrid g(p, q, M, N);
    for (std::size_t m = 0; m <= M; ++m) {
        if (!f[m].is_array() || f[m].size() != N + 1) throw Error(ErrorKind::ParseError, "ragged grid");
        for (std::size_t n = 0; n <= N; ++n) {
            CMatrix v = matrix_from_json(f[m][n]);
            if (v.rows() != p || v.cols() != q) throw Error(ErrorKind::ParseError, "grid entry has the wrong block size");
            g.at(m, n) = std::move(v);
        }
    }
    return g;
}

AtomicMeasure measure_from_json(const json& j) {
    reject_unknown_keys(j, {"p", "atoms"});
    const json& atoms = need(j, "atoms");
    if (!atoms.is_array()) throw Error(ErrorKind::ParseError, "'atoms' must be an array");
    AtomicMeasure mu;
    mu.p = j.contains("p") ? size_field(j, "p") : 0;
    for (const auto& a : atoms) {
        reject_unknown_keys(a, {"theta", "weight"});
        const json& th = need(a, "theta");
        if (!th.is_number()) throw Error(ErrorKind::ParseError, "'theta' must be a number");
        Atom at{th.get<double>(), matrix_from_json(need(a, "weight"))};
        if (mu.p == 0) mu.p = at.weight.rows();
        mu.atoms.push_back(std::move(at));
    }
    if (mu.p == 0) mu.p = 1;
    try {
        mu.validate();
    } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    return mu;
}

StateSpace state_space_from_json(const json& j) {
    reject_unknown_keys(j, {"A", "B", "C", "D", "center"});
    StateSpace S;
    S.A = matrix_from_json(need(j, "A"));
    S.B = matrix_from_json(need(j, "B"));
    S.C = matrix_from_json(need(j, "C"));
    S.D = matrix_from_json(need(j, "D"));
    if (j.contains("center")) {
        const json& c = j.at("center");
        if (c == "inf")
            S.center = Center::Infinity;
        else if (c == "zero")
            S.center = Center::Zero;
        else
            throw Error(ErrorKind::ParseError, "center must be \"inf\" or \"zero\"");
    }
    try {
        S.validate();
    } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    return S;
}

SpectralFactor factor_from_json(const json& j) {
    reject_unknown_keys(j, {"a", "b", "c", "d"});
    SpectralFactor w{matrix_from_json(need(j, "a")), matrix_from_json(need(j, "b")), matrix_from_json(need(j, "c")),
                     matrix_from_json(need(j, "d"))};
    try {
        w.validate();
    } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    return w;
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw Error(ErrorKind::ParseError, "unknown key '" + it.key() + "'");
    }
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_complex_csv(cd z) {
    std::string im = format_double(std::abs(z.imag()));
    return format_double(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + im + "i";
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

namespace {

bool is_flat(const json& j) {
    // arrays of scalars or of scalar pairs stay on one line
    for (const auto& e : j) {
        if (e.is_object()) return false;
        if (e.is_array())
            for (const auto& x : e)
                if (x.is_structured() && !(x.is_array() && x.size() == 2 && x[0].is_number())) return false;
    }
    return true;
}

void write(std::ostringstream& os, const json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ",\n";
                first = false;
                os << inner << json(it.key()).dump() << ": ";
                write(os, it.value(), indent + 1);
            }
            os << "\n" << pad << "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty() || is_flat(j)) {
                os << "[";
                bool first = true;
                for (const auto& e : j) {
                    if (!first) os << ", ";
                    first = false;
                    write(os, e, indent + 1);
                }
                os << "]";
                return;
            }
            os << "[\n";
            bool first = true;
            for (const auto& e : j) {
                if (!first) os << ",\n";
                first = false;
                os << inner;
                write(os, e, indent + 1);
            }
            os << "\n" << pad << "]";
            return;
        }
        case json::value_t::number_float: {
            double x = j.get<double>();
            os << (std::isfinite(x) ? format_double(x) : "null");
            return;
        }
        default:
            os << j.dump();
    }
}

}  // namespace

std::string dump(const json& j) {
    std::ostringstream os;
    write(os, j, 0);
    os << "\n";
    return os.str();
}

}  // namespace daft::io
