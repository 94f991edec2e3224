#pragma once

#include "nurbsinv/inverse.hpp"

namespace nurbsinv {

struct OracleConfig {
    int max_iterations = 64;
    Scalar tolerance = Scalar::real(1e-9);
    int seeds_per_segment = 8;
};

// Iterative preimage solver, independent of the closed-form inverse: per
// active segment, Newton iteration on the stationarity of |phi(u) - q|^2 from
// uniformly spaced seeds, with bisection fallback across sign changes.
// Candidates with residual <= tolerance are deduplicated within
// 10*tolerance; none at all -> PointNotOnCurve.
PreimageResult newton_invert(const NurbsCurve& c, const Point& q, const OracleConfig& cfg);

struct BenchReport {
    struct Method {
        std::string name;
        int points = 0;
        double mean_ns = 0.0;
        double p99_ns = 0.0;
    };
    std::vector<Method> methods;
    double max_disagreement = 0.0;

    // One record per method: name, points, mean_ns, p99_ns, max_disagreement.
    std::string to_text() const;
};

// Times closed-form inversion against the Newton oracle over n on-curve
// sample points and reports the worst parameter disagreement.
BenchReport bench_compare(const NurbsCurve& c, int n_points, const OracleConfig& cfg);

// Parameter pairs (u1, u2), u1 < u2, with phi(u1) = phi(u2): polyline
// crossing seeds refined by 2D Newton on phi(u) - phi(v).
std::vector<std::pair<double, double>> find_self_intersections(const NurbsCurve& c);

}  // namespace nurbsinv
