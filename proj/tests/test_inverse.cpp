#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "nurbsinv/inverse.hpp"

#include <algorithm>
#include <cmath>

using namespace nurbsinv;
using testutil::fixture;
using testutil::q;

namespace {

BivariatePoly linear(long cx, long cy, long c0) {
    BivariatePoly p(Backend::Exact);
    p.add_term(1, 0, q(cx));
    p.add_term(0, 1, q(cy));
    p.add_term(0, 0, q(c0));
    return p;
}

// A quadratic whose control points sit on one line: the image is a segment
// of that line, which no minor ratio can invert.
NurbsCurve line_curve() {
    NurbsCurve c{2,
                 KnotVector({q(0), q(0), q(0), q(1, 2), q(1), q(1), q(1)}, 2),
                 {Point{q(0), q(0)}, Point{q(1), q(1)}, Point{q(2), q(2)}, Point{q(3), q(3)}},
                 {q(1), q(1), q(3, 2), q(1)},
                 "degenerate-line"};
    c.validate();
    return c;
}

}  // namespace

TEST_CASE("reference inverse formulas on the two-span quadratic", "[inverse]") {
    NurbsCurve c = fixture("quadratic");
    PiecewiseInverse pi = global_inverse(c);
    REQUIRE(pi.pieces.size() == 2);

    // Known closed forms for the global parameter on each span, compared by
    // cross-multiplication so no denominator is ever divided by.
    BivariatePoly n2 = linear(-31, 3, 0), d2 = linear(28, 31, -57);
    BivariatePoly n3 = linear(255, 85, -136), d3 = linear(180, 55, -49);

    for (int j = 0; j <= 24; ++j) {
        Scalar u = q(j, 24);
        Point p = curve_eval(c, u);
        if (j <= 12) REQUIRE(u * d2.eval(p[0], p[1]) == n2.eval(p[0], p[1]));
        if (j >= 12) REQUIRE(u * d3.eval(p[0], p[1]) == n3.eval(p[0], p[1]));
        // The stored piece recovers the same parameter on its closed span.
        REQUIRE(pi.value_on_segment(p, j <= 12 ? 2 : 3) == u);
    }
}

TEST_CASE("degree-2 closed form agrees with the minor ladder", "[inverse]") {
    NurbsCurve c = fixture("quadratic");
    PiecewiseInverse pi = global_inverse(c);
    for (const auto& iv : c.knots.active_intervals()) {
        LocalInverse cf = quadratic_closed_form(c, iv.k);
        const LocalInverse& mi = pi.piece_for_segment(iv.k).inv;
        for (int j = 0; j <= 25; ++j) {
            Scalar t = q(j, 25);
            Point p = curve_eval(c, iv.lo + (iv.hi - iv.lo) * t);
            // Same chart value, cross-multiplied.
            REQUIRE(cf.numerator.eval(p[0], p[1]) * mi.denominator.eval(p[0], p[1]) ==
                    mi.numerator.eval(p[0], p[1]) * cf.denominator.eval(p[0], p[1]));
            // The closed form's denominator vanishes nowhere on the chart.
            Scalar den = cf.denominator.eval(p[0], p[1]);
            REQUIRE(!den.is_zero());
            REQUIRE(cf.numerator.eval(p[0], p[1]) / den == t);
        }
    }
    SECTION("chart value 1 at the right end of the first span") {
        LocalInverse cf = quadratic_closed_form(c, 2);
        Point p = curve_eval(c, q(1, 2));
        REQUIRE(cf.numerator.eval(p[0], p[1]) == cf.denominator.eval(p[0], p[1]));
    }
}

TEST_CASE("round trip through the piecewise inverse", "[inverse]") {
    for (const char* name : {"quadratic", "cubic", "quartic", "quintic"}) {
        NurbsCurve c = fixture(name);
        PiecewiseInverse pi = global_inverse(c);
        REQUIRE(pi.pieces.size() == c.knots.active_intervals().size());
        for (const Scalar& u : testutil::random_interior_params(c, 10, 0xab12))
            REQUIRE(pi.roundtrip(u) == u);
        REQUIRE(pi.roundtrip(c.knots.front()) == c.knots.front());
        REQUIRE(pi.roundtrip(c.knots.back()) == c.knots.back());
    }
}

TEST_CASE("float pieces are rounded images of the exact minors", "[inverse]") {
    NurbsCurve c = fixture("cubic", Backend::Float);
    PiecewiseInverse pi = global_inverse(c);
    SECTION("round trip accuracy") {
        for (const Scalar& u : testutil::random_interior_params(c, 25, 0x77aa)) {
            double err = std::abs(pi.roundtrip(u).to_double() - u.to_double());
            REQUIRE(err < 1e-9);
        }
    }
    SECTION("denominators are normalized to unit leading scale") {
        for (const auto& pc : pi.pieces) {
            double max_abs = 0;
            for (const auto& [k, coef] : pc.inv.denominator.terms())
                max_abs = std::max(max_abs, std::abs(coef.to_double()));
            REQUIRE(max_abs == 1.0);
        }
    }
}

TEST_CASE("point inversion", "[inverse]") {
    NurbsCurve c = fixture("quadratic");
    PiecewiseInverse pi = global_inverse(c);
    const Scalar tol = q(1, 1000000000);

    SECTION("interior point, single record") {
        PreimageResult r = invert_point(pi, curve_eval(c, q(1, 3)), tol);
        REQUIRE(r.candidates.size() == 1);
        REQUIRE(r.candidates[0].u == q(1, 3));
        REQUIRE(r.candidates[0].segment == 2);
        REQUIRE_FALSE(r.multivalued);
    }
    SECTION("interior knot image stays single-valued across the seam") {
        PreimageResult r = invert_point(pi, curve_eval(c, q(1, 2)), tol);
        REQUIRE(r.candidates.size() == 1);
        REQUIRE(r.candidates[0].u == q(1, 2));
        REQUIRE(r.candidates[0].segment == 3);  // half-open ownership
        REQUIRE_FALSE(r.multivalued);
    }
    SECTION("far point throws") {
        REQUIRE_THROWS_AS(invert_point(pi, Point{q(100), q(100)}, tol), PointNotOnCurve);
    }
    SECTION("mirror pair on the quintic is not conflated") {
        NurbsCurve c5 = fixture("quintic");
        PiecewiseInverse pi5 = global_inverse(c5);
        PreimageResult r = invert_point(pi5, curve_eval(c5, q(1, 4)), tol);
        REQUIRE(r.candidates.size() == 1);
        REQUIRE(r.candidates[0].u == q(1, 4));
    }
    SECTION("self-intersection of the quintic is two-valued (float)") {
        NurbsCurve c5 = fixture("quintic", Backend::Float);
        PiecewiseInverse pi5 = global_inverse(c5);
        const double u1 = 0.17120531651156881;
        const double sy = -0.10845141671972981;
        Point s{Scalar::real(2.0), Scalar::real(sy)};
        PreimageResult r = invert_point(pi5, s, Scalar::real(1e-9));
        REQUIRE(r.candidates.size() == 2);
        REQUIRE(r.multivalued);
        std::vector<double> us = {r.candidates[0].u.to_double(), r.candidates[1].u.to_double()};
        std::sort(us.begin(), us.end());
        REQUIRE(std::abs(us[0] - u1) < 1e-9);
        REQUIRE(std::abs(us[1] - (1.0 - u1)) < 1e-9);
        for (const auto& cand : r.candidates) REQUIRE(cand.residual < 1e-8);
    }
    SECTION("tolerance must be positive") {
        REQUIRE_THROWS_AS(invert_point(pi, Point{q(0), q(0)}, q(0)), std::invalid_argument);
    }
}

TEST_CASE("degenerate curves are refused", "[inverse]") {
    NurbsCurve line = line_curve();
    SECTION("construction throws with the offending segment") {
        try {
            global_inverse(line);
            FAIL("expected NonGeneralSegment");
        } catch (const NonGeneralSegment& e) {
            REQUIRE(e.segment == 2);
        }
    }
    SECTION("the genericity report flags every span") {
        auto reports = genericity_check(line);
        REQUIRE(reports.size() == 2);
        for (const auto& r : reports) {
            REQUIRE_FALSE(r.general);
            REQUIRE_FALSE(r.detail.empty());
        }
    }
    SECTION("reference fixtures are all general") {
        for (const char* name : {"quadratic", "cubic", "quartic", "quintic"})
            for (const auto& r : genericity_check(fixture(name))) REQUIRE(r.general);
    }
}

TEST_CASE("piece lookup", "[inverse]") {
    PiecewiseInverse pi = global_inverse(fixture("quadratic"));
    REQUIRE(pi.piece_for_segment(2).k == 2);
    REQUIRE_THROWS_AS(pi.piece_for_segment(7), std::invalid_argument);
}
