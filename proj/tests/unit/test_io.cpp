#include "random_util.hpp"

#include "cyp/io/json_io.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace cyp;
using namespace cyp::testing;

TEST_CASE("rationals and series round trip through JSON")
{
    for (int t = 0; t < 100; ++t) {
        Rational r = random_rational(1000000, 1000);
        CHECK(rational_from_json(to_json(r), "r") == r);
        QSeries s = random_series(static_cast<size_t>(uniform(0, 10)), "q");
        CHECK(series_from_json(Json::parse(to_json(s).dump())) == s);
    }
    CHECK(rational_from_json(Json(7), "x") == 7);
}

TEST_CASE("operators, problems and matrices round trip through JSON")
{
    for (auto name : {"dn-31-1-D", "dn-31-1-Dtilde", "quintic"}) {
        auto op = preset_operator(name);
        CHECK(operator_from_json(Json::parse(to_json(op).dump())) == op);
    }
    auto p = preset_problem("dn-31-1", 12);
    auto q = problem_from_json(Json::parse(to_json(p).dump()));
    CHECK(q.P == p.P);
    CHECK(q.order == p.order);
    CHECK(q.torus.radii == p.torus.radii);
    CHECK(q.torus.a_bound == p.torus.a_bound);
    QMatrix m = QMatrix::from_rows({{1, 2}, {Rational(Integer(-1), Integer(3)), 0}});
    CHECK(matrix_from_json(to_json(m)) == m);
}

TEST_CASE("malformed input is an input error")
{
    auto kind = [](auto f) {
        try {
            f();
        } catch (const Error &e) {
            return e.kind();
        }
        return ErrorKind::Computation;
    };
    CHECK(kind([] { rational_from_json(Json("1/x"), "r"); }) == ErrorKind::Input);
    CHECK(kind([] { operator_from_json(Json::parse(R"({"coeffs": [["1"]]})")); }) == ErrorKind::Input);
    CHECK(kind([] { operator_from_json(Json::parse(R"({"coeffs": [["1"], []]})")); }) == ErrorKind::Input);
    CHECK(kind([] { series_from_json(Json::parse(R"({"order": -1, "coeffs": []})")); }) == ErrorKind::Input);
    CHECK(kind([] { matrix_from_json(Json::parse(R"([["1","2"],["3"]])")); }) == ErrorKind::Input);
    CHECK(kind([] { problem_from_json(Json::parse(R"({"order": 4, "monomials": [{"y": [1, 2], "c": "1"}]})")); }) ==
          ErrorKind::Input);
    CHECK(kind([] { read_json_file("/nonexistent/file.json"); }) == ErrorKind::Input);

    std::string path = "cyp_unit_malformed.json";
    std::ofstream(path) << "{\"coeffs\": [1, 2";
    try {
        read_json_file(path);
        FAIL("no exception");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::Input);
        CHECK(std::string(e.what()).find(path) != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("GW table input")
{
    auto n = gw_table_from_json(Json::parse(R"({"N": ["0", "9/8", 3]})"));
    REQUIRE(n.size() == 3);
    CHECK(n[1] == Rational(Integer(9), Integer(8)));
    CHECK(n[2] == 3);
}
