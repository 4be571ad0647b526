#include "doctest.h"

#include "daft/io.hpp"

using namespace daft;
using io::json;

TEST_CASE("complex and matrix json shapes") {
    CHECK(io::complex_from_json(json(2.5)) == cd(2.5, 0));
    CHECK(io::complex_from_json(json::parse("[1, -2]")) == cd(1, -2));
    CHECK_THROWS_AS(io::complex_from_json(json::parse("\"x\"")), Error);

    CMatrix s = io::matrix_from_json(json(3.0));
    CHECK(s.rows() == 1);
    CHECK(s(0, 0) == cd(3, 0));
    CHECK(io::matrix_from_json(json::parse("[0.5, 0.25]"))(0, 0) == cd(0.5, 0.25));
    CHECK(io::matrix_from_json(json::parse("[]")).rows() == 0);

    CMatrix a = io::matrix_from_json(json::parse("[[1, [0, 1]], [[2, -1], 4]]"));
    CHECK(a.rows() == 2);
    CHECK(a.cols() == 2);
    CHECK(a(0, 1) == cd(0, 1));
    CHECK(a(1, 0) == cd(2, -1));
    CHECK_THROWS_AS(io::matrix_from_json(json::parse("[[1, 2], [3]]")), Error);
}

TEST_CASE("matrix round trip keeps every bit") {
    CMatrix a(2, 3);
    a(0, 0) = cd(0.1, -1.0 / 3.0);
    a(0, 2) = cd(1e-300, 6.02214076e23);
    a(1, 1) = cd(-std::acos(-1.0), std::sqrt(2.0));
    json j = json::parse(io::dump(io::to_json(a)));
    CMatrix b = io::matrix_from_json(j);
    CHECK(dist(a, b) == 0.0);
}

TEST_CASE("grid, measure, system and factor round trips") {
    DafGrid g(1, 1, 1, 2);
    for (std::size_t m = 0; m <= 1; ++m)
        for (std::size_t n = 0; n <= 2; ++n) g.at(m, n) = CMatrix::scalar(cd(m + 0.5, n - 0.25));
    DafGrid g2 = io::grid_from_json(json::parse(io::dump(io::to_json(g))));
    CHECK(g2.M() == 1);
    CHECK(g2.N() == 2);
    CHECK(dist(g2.at(1, 2), g.at(1, 2)) == 0.0);

    AtomicMeasure mu;
    mu.p = 1;
    mu.atoms.push_back({0.75, CMatrix::scalar(2.0)});
    AtomicMeasure mu2 = io::measure_from_json(io::to_json(mu));
    CHECK(mu2.atoms.size() == 1);
    CHECK(mu2.atoms[0].theta == 0.75);

    StateSpace S;
    S.A = CMatrix::scalar(0.5);
    S.B = CMatrix::scalar(1.0);
    S.C = CMatrix::scalar(cd(0, 2));
    S.D = CMatrix::scalar(0.0);
    S.center = Center::Zero;
    StateSpace S2 = io::state_space_from_json(io::to_json(S));
    CHECK(S2.center == Center::Zero);
    CHECK(S2.C(0, 0) == cd(0, 2));

    SpectralFactor w{CMatrix::scalar(0.5), CMatrix::scalar(1.0), CMatrix::scalar(1.0), CMatrix::scalar(0.0)};
    SpectralFactor w2 = io::factor_from_json(io::to_json(w));
    CHECK(w2.a(0, 0) == cd(0.5, 0));
}

TEST_CASE("unknown keys and malformed inputs are rejected") {
    CHECK_THROWS_AS(io::grid_from_json(json::parse(R"({"p":1,"q":1,"f":[[1]],"extra":0})")), Error);
    CHECK_THROWS_AS(io::measure_from_json(json::parse(R"({"atoms":[{"theta":0,"weight":1,"w":2}]})")), Error);
    CHECK_THROWS_AS(io::state_space_from_json(json::parse(R"({"A":1,"B":1,"C":1,"D":1,"center":"left"})")), Error);
    CHECK_THROWS_AS(io::factor_from_json(json::parse(R"({"a":1,"b":1,"c":1})")), Error);
    CHECK_THROWS_AS(io::grid_from_json(json::parse(R"({"p":2,"q":2,"f":[[1]]})")), Error);
    try {
        io::reject_unknown_keys(json::parse(R"({"ok":1,"bad":2})"), {"ok"});
        FAIL("expected a throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
    }
}

TEST_CASE("number formatting") {
    CHECK(io::format_double(0.1) == "0.10000000000000001");
    CHECK(io::format_double(1.0) == "1");
    CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(io::format_complex_csv(cd(1.5, -2)) == "1.5-2i");
    CHECK(io::format_complex_csv(cd(0, 0)) == "0+0i");
    CHECK(io::format_complex_csv(cd(-1, -0.0)) == "-1-0i");
}

TEST_CASE("csv escaping") {
    CHECK(io::csv_escape("plain") == "plain");
    CHECK(io::csv_escape("a,b") == "\"a,b\"");
    CHECK(io::csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(io::csv_escape("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("dump prints full precision and nulls non-finite values") {
    json j = json::object();
    j["x"] = 0.1;
    j["bad"] = std::numeric_limits<double>::quiet_NaN();
    j["v"] = json::array({1, 2});
    std::string s = io::dump(j);
    CHECK(s.find("0.10000000000000001") != std::string::npos);
    CHECK(s.find("\"bad\": null") != std::string::npos);
    CHECK(s.find("[1, 2]") != std::string::npos);
    CHECK(json::parse(s).size() == 3);
}
