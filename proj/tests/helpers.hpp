#pragma once

#include "nurbsinv/json_io.hpp"

#include <random>
#include <string>

namespace testutil {

inline nurbsinv::NurbsCurve fixture(const std::string& name,
                                    nurbsinv::Backend b = nurbsinv::Backend::Exact) {
    return nurbsinv::load_curve_file(std::string(FIXTURE_DIR) + "/" + name + ".json", b);
}

inline nurbsinv::Scalar q(long num, long den = 1) { return nurbsinv::Scalar::exact(num, den); }

// Deterministic interior parameters: dyadic rationals r/2^20 mapped into
// (u_0, u_m), exact in both backends.
inline std::vector<nurbsinv::Scalar> random_interior_params(const nurbsinv::NurbsCurve& c, int n,
                                                            unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(1, (1L << 20) - 1);
    std::vector<nurbsinv::Scalar> out;
    const nurbsinv::Scalar lo = c.knots.front(), hi = c.knots.back();
    for (int i = 0; i < n; ++i) {
        nurbsinv::Scalar r = nurbsinv::Scalar::exact(dist(rng), 1L << 20).to_backend(c.backend());
        out.push_back(lo + (hi - lo) * r);
    }
    return out;
}

}  // namespace testutil
