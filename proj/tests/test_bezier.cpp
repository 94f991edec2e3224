#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "nurbsinv/bezier.hpp"

using namespace nurbsinv;
using testutil::fixture;
using testutil::q;

TEST_CASE("extraction matrices on the two-span quadratic", "[bezier]") {
    NurbsCurve c = fixture("quadratic");
    SECTION("first span") {
        ExtractionMatrix s = extraction_matrix(c.knots, 2, 2);
        REQUIRE(s.m == std::vector<std::vector<Scalar>>{{q(1), q(0), q(0)},
                                                        {q(0), q(1), q(0)},
                                                        {q(0), q(1, 2), q(1, 2)}});
    }
    SECTION("second span") {
        ExtractionMatrix s = extraction_matrix(c.knots, 2, 3);
        REQUIRE(s.m == std::vector<std::vector<Scalar>>{{q(1, 2), q(1, 2), q(0)},
                                                        {q(0), q(1), q(0)},
                                                        {q(0), q(0), q(1)}});
    }
}

TEST_CASE("extraction rows sum to one", "[bezier]") {
    // Both bases form partitions of unity, so the change of basis preserves
    // the constant function: every row must sum to 1.
    for (const char* name : {"quadratic", "cubic", "quartic", "quintic"}) {
        NurbsCurve c = fixture(name);
        for (const auto& iv : c.knots.active_intervals()) {
            ExtractionMatrix s = extraction_matrix(c.knots, c.degree, iv.k);
            REQUIRE(static_cast<int>(s.m.size()) == c.degree + 1);
            for (const auto& row : s.m) {
                Scalar sum = Scalar::zero(Backend::Exact);
                for (const Scalar& e : row) sum += e;
                REQUIRE(sum == q(1));
            }
        }
    }
}

TEST_CASE("row-scaled quadratic matrix", "[bezier]") {
    NurbsCurve c = fixture("quadratic");
    SECTION("rows scaled by the active weights") {
        ExtractionMatrix s = quadratic_weighted_matrix(c, 2);
        // weights w_0..w_2 = 1, 3, 3/2 scale rows 0..2 of the plain matrix
        REQUIRE(s.m == std::vector<std::vector<Scalar>>{{q(1), q(0), q(0)},
                                                        {q(0), q(3), q(0)},
                                                        {q(0), q(3, 4), q(3, 4)}});
    }
    SECTION("coincides with the plain matrix at unit weights") {
        NurbsCurve u = c;
        for (auto& w : u.weights) w = q(1);
        for (const auto& iv : u.knots.active_intervals())
            REQUIRE(quadratic_weighted_matrix(u, iv.k).m ==
                    extraction_matrix(u.knots, 2, iv.k).m);
    }
    SECTION("rejects other degrees") {
        REQUIRE_THROWS(quadratic_weighted_matrix(fixture("cubic"), 3));
    }
}

TEST_CASE("homogeneous segments reproduce the curve", "[bezier]") {
    // On each span, (f1/f0, f2/f0) at the chart value t must equal the curve
    // at u_lo + t * (u_hi - u_lo), exactly.
    for (const char* name : {"quadratic", "cubic", "quartic", "quintic"}) {
        NurbsCurve c = fixture(name);
        for (const auto& iv : c.knots.active_intervals()) {
            BezierSegment seg = segment_homogeneous(c, iv.k);
            REQUIRE(seg.degree == c.degree);
            REQUIRE(seg.u_lo == iv.lo);
            REQUIRE(seg.u_hi == iv.hi);
            for (int j = 0; j <= 6; ++j) {
                Scalar t = q(j, 6);
                Scalar u = iv.lo + (iv.hi - iv.lo) * t;
                Point p = curve_eval(c, u);
                Scalar f0 = seg.f0.eval(t);
                REQUIRE(!f0.is_zero());
                REQUIRE(seg.f1.eval(t) == p[0] * f0);
                REQUIRE(seg.f2.eval(t) == p[1] * f0);
            }
        }
    }
}

TEST_CASE("homogeneous weight component starts at the active weights", "[bezier]") {
    // At t = 0 and t = 1 the weight polynomial equals the clamped end
    // weights of the span (the Bernstein ends pick out single control
    // points after extraction).
    NurbsCurve c = fixture("quadratic");
    BezierSegment first = segment_homogeneous(c, 2);
    REQUIRE(first.f0.eval(q(0)) == c.weights[0]);
    BezierSegment last = segment_homogeneous(c, 3);
    REQUIRE(last.f0.eval(q(1)) == c.weights[3]);
}
