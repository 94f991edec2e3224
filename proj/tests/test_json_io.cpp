#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "nurbsinv/json_io.hpp"

#include <json.hpp>

#include <functional>

using namespace nurbsinv;
using testutil::fixture;
using testutil::q;

namespace {

std::string whats(const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

const char* minimal = R"({
  "degree": 1,
  "knots": [0, 0, "1/2", 1, 1],
  "control_points": [[0, 0], ["1/2", 1], [1, 0]],
  "weights": [1, 2, 1],
  "name": "wedge"
})";

}  // namespace

TEST_CASE("curve documents parse exactly", "[json]") {
    CurveDocument d = parse_curve_document(minimal, Backend::Exact);
    REQUIRE(d.degree == 1);
    REQUIRE(d.knots[2] == q(1, 2));
    REQUIRE(d.control_points[1][0] == q(1, 2));
    REQUIRE(d.weights[1] == q(2));
    REQUIRE(d.name == "wedge");
    SECTION("decimal literals land on the same rationals") {
        std::string decimal(minimal);
        decimal.replace(decimal.find("\"1/2\", 1"), 8, "0.5, 1  ");
        CurveDocument d2 = parse_curve_document(decimal, Backend::Exact);
        REQUIRE(d2.knots[2] == q(1, 2));
    }
    SECTION("float backend") {
        CurveDocument d2 = parse_curve_document(minimal, Backend::Float);
        REQUIRE(d2.knots[2].to_double() == 0.5);
        REQUIRE(d2.knots[2].backend() == Backend::Float);
    }
}

TEST_CASE("serialization round trips", "[json]") {
    for (const char* name : {"quadratic", "quartic"}) {
        NurbsCurve c = fixture(name);
        CurveDocument d = CurveDocument::from_curve(c);
        CurveDocument d2 = parse_curve_document(serialize_curve_document(d), Backend::Exact);
        NurbsCurve c2 = d2.to_curve();
        REQUIRE(c2.degree == c.degree);
        REQUIRE(c2.knots.knots() == c.knots.knots());
        REQUIRE(c2.control_points == c.control_points);
        REQUIRE(c2.weights == c.weights);
        REQUIRE(c2.name == c.name);
    }
}

TEST_CASE("parse errors name the offending field", "[json]") {
    auto mutate = [&](const std::string& from, const std::string& to) {
        std::string s(minimal);
        s.replace(s.find(from), from.size(), to);
        return s;
    };
    SECTION("missing field") {
        std::string e = whats([&] { parse_curve_document(mutate("\"degree\": 1,", ""), Backend::Exact); });
        REQUIRE(e.find("degree") != std::string::npos);
    }
    SECTION("bad knot entry") {
        std::string e = whats(
            [&] { parse_curve_document(mutate("\"1/2\"", "\"x\""), Backend::Exact); });
        REQUIRE(e.find("knots[2]") != std::string::npos);
    }
    SECTION("bad control point shape") {
        std::string e = whats(
            [&] { parse_curve_document(mutate("[\"1/2\", 1]", "[1]"), Backend::Exact); });
        REQUIRE(e.find("control_points[1]") != std::string::npos);
    }
    SECTION("wrong name type") {
        std::string e =
            whats([&] { parse_curve_document(mutate("\"wedge\"", "17"), Backend::Exact); });
        REQUIRE(e.find("name") != std::string::npos);
    }
    SECTION("not json at all") {
        REQUIRE_THROWS_AS(parse_curve_document("{", Backend::Exact), ValidationError);
    }
    SECTION("document validates as a curve") {
        // weights length disagrees with control points
        std::string e = whats(
            [&] { parse_curve_document(mutate("[1, 2, 1]", "[1, 2]"), Backend::Exact).to_curve(); });
        REQUIRE(!e.empty());
    }
}

TEST_CASE("inverse serialization is structured json", "[json]") {
    NurbsCurve c = fixture("quadratic");
    PiecewiseInverse pi = global_inverse(c);
    SECTION("piecewise form") {
        auto j = nlohmann::json::parse(serialize_piecewise(pi));
        REQUIRE(j["form"] == "piecewise");
        REQUIRE(j["segments"].size() == 2);
        REQUIRE(j["segments"][0]["segment"] == 2);
        REQUIRE(j["segments"][0]["u_lo"] == "0");
        REQUIRE(j["segments"][1]["u_hi"] == "1");
        REQUIRE(j["segments"][0]["numerator"].is_array());
        // terms are [ex, ey, coefficient] triples
        REQUIRE(j["segments"][0]["numerator"][0].size() == 3);
    }
    SECTION("spline form") {
        auto j = nlohmann::json::parse(serialize_spline_form(inverse_spline_form(c, 1)));
        REQUIRE(j["form"] == "spline");
        REQUIRE(j["degree"] == 1);
        REQUIRE(j["greville"].size() == 3);
        REQUIRE(j["splines"].size() == 3);
        REQUIRE(j["splines"][1]["branches"].size() == 2);
        REQUIRE(j["self_intersection_warning"] == false);
    }
}

TEST_CASE("file loading", "[json]") {
    REQUIRE_THROWS_AS(load_curve_file("/nonexistent/path.json", Backend::Exact), ValidationError);
    NurbsCurve c = load_curve_file(std::string(FIXTURE_DIR) + "/quadratic.json", Backend::Exact);
    REQUIRE(c.name == "quadratic-two-span");
}
