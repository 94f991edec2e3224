#include "nurbsinv/newton.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

namespace nurbsinv {

namespace {

struct Stationarity {
    double g;   // |phi(u) - q|^2
    double r;   // g' / 2
    double rp;  // r'
};

Stationarity stationarity(const NurbsCurve& c, double u, double qx, double qy) {
    auto d = curve_derivatives(c, Scalar::real(u));
    double ex = d[0][0].to_double() - qx, ey = d[0][1].to_double() - qy;
    double dx = d[1][0].to_double(), dy = d[1][1].to_double();
    double cx = d[2][0].to_double(), cy = d[2][1].to_double();
    return {ex * ex + ey * ey, ex * dx + ey * dy, dx * dx + dy * dy + ex * cx + ey * cy};
}

}  // namespace

PreimageResult newton_invert(const NurbsCurve& c, const Point& q, const OracleConfig& cfg) {
    if (c.backend() != Backend::Float)
        throw std::invalid_argument("newton oracle runs on the float backend");
    if (!(cfg.tolerance.sign() > 0) || cfg.seeds_per_segment < 3 || cfg.max_iterations < 1)
        throw std::invalid_argument("oracle config out of range");
    const double tol = cfg.tolerance.to_double();
    const double qx = q[0].to_double(), qy = q[1].to_double();

    std::vector<PreimageCandidate> cands;
    auto consider = [&](double u, int seg) {
        Stationarity s = stationarity(c, u, qx, qy);
        if (s.g <= tol * tol) cands.push_back({Scalar::real(u), seg, std::sqrt(s.g)});
    };

    for (const auto& iv : c.knots.active_intervals()) {
        const double lo = iv.lo.to_double(), hi = iv.hi.to_double();
        const int S = cfg.seeds_per_segment;
        std::vector<double> us(S), rs(S);
        for (int j = 0; j < S; ++j) {
            us[j] = lo + (hi - lo) * j / (S - 1);
            rs[j] = stationarity(c, us[j], qx, qy).r;
        }
        consider(lo, iv.k);
        consider(hi, iv.k);
        for (int j = 0; j < S; ++j) {
            double u = us[j];
            for (int it = 0; it < cfg.max_iterations; ++it) {
                Stationarity s = stationarity(c, u, qx, qy);
                if (s.rp == 0.0) break;
                double step = s.r / s.rp;
                u = std::clamp(u - step, lo, hi);
                if (std::abs(step) < 1e-15 * (hi - lo)) break;
            }
            consider(u, iv.k);
        }
        // Bisection fallback across stationarity sign changes.
        for (int j = 0; j + 1 < S; ++j) {
            if (!(rs[j] * rs[j + 1] < 0.0)) continue;
            double a = us[j], b = us[j + 1], ra = rs[j];
            for (int it = 0; it < 200 && b - a > 1e-16 * (hi - lo); ++it) {
                double mid = 0.5 * (a + b);
                double rm = stationarity(c, mid, qx, qy).r;
                if (ra * rm <= 0.0)
                    b = mid;
                else
                    a = mid, ra = rm;
            }
            consider(0.5 * (a + b), iv.k);
        }
    }

    std::sort(cands.begin(), cands.end(),
              [](const auto& a, const auto& b) { return a.u.to_double() < b.u.to_double(); });
    std::vector<PreimageCandidate> dedup;
    for (const auto& cand : cands) {
        if (!dedup.empty() &&
            std::abs(cand.u.to_double() - dedup.back().u.to_double()) <= 10.0 * tol) {
            if (cand.residual < dedup.back().residual) dedup.back() = cand;
        } else {
            dedup.push_back(cand);
        }
    }
    if (dedup.empty()) throw PointNotOnCurve();
    std::stable_sort(dedup.begin(), dedup.end(),
                     [](const auto& a, const auto& b) { return a.residual < b.residual; });
    PreimageResult out;
    out.candidates = std::move(dedup);
    out.multivalued = out.candidates.size() >= 2;
    return out;
}

std::string BenchReport::to_text() const {
    std::ostringstream os;
    for (const auto& m : methods) {
        os << "name=" << m.name << " points=" << m.points << " mean_ns=" << m.mean_ns
           << " p99_ns=" << m.p99_ns << " max_disagreement=" << max_disagreement << "\n";
    }
    return os.str();
}

BenchReport bench_compare(const NurbsCurve& c, int n_points, const OracleConfig& cfg) {
    if (c.backend() != Backend::Float)
        throw std::invalid_argument("benchmark runs on the float backend");
    BenchReport rep;
    if (n_points <= 0) {
        rep.methods.push_back({"closed_form", 0, 0.0, 0.0});
        rep.methods.push_back({"newton", 0, 0.0, 0.0});
        return rep;
    }

    PiecewiseInverse inv = global_inverse(c);
    std::mt19937_64 rng(0x5eed5eedULL);
    const double u0 = c.knots.front().to_double(), um = c.knots.back().to_double();
    std::uniform_real_distribution<double> dist(u0 + 1e-9 * (um - u0), um - 1e-9 * (um - u0));

    std::vector<double> us(n_points);
    std::vector<Point> qs;
    qs.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        us[i] = dist(rng);
        qs.push_back(curve_eval(c, Scalar::real(us[i])));
    }

    using clock = std::chrono::steady_clock;
    std::vector<double> t_closed(n_points), t_newton(n_points);
    std::vector<double> u_closed(n_points), u_newton(n_points);

    for (int i = 0; i < n_points; ++i) {
        auto a = clock::now();
        PreimageResult r = invert_point(inv, qs[i], cfg.tolerance);
        auto b = clock::now();
        t_closed[i] = std::chrono::duration<double, std::nano>(b - a).count();
        u_closed[i] = r.candidates.front().u.to_double();
    }
    for (int i = 0; i < n_points; ++i) {
        auto a = clock::now();
        PreimageResult r = newton_invert(c, qs[i], cfg);
        auto b = clock::now();
        t_newton[i] = std::chrono::duration<double, std::nano>(b - a).count();
        // Pair against the closed-form pick: nearest candidate (robust at
        // multivalued points, where ordering by residual is arbitrary).
        double best = r.candidates.front().u.to_double();
        for (const auto& cand : r.candidates)
            if (std::abs(cand.u.to_double() - u_closed[i]) < std::abs(best - u_closed[i]))
                best = cand.u.to_double();
        u_newton[i] = best;
    }

    double worst = 0.0;
    for (int i = 0; i < n_points; ++i)
        worst = std::max(worst, std::abs(u_closed[i] - u_newton[i]));
    rep.max_disagreement = worst;

    auto stats = [&](std::vector<double> t, const std::string& name) {
        double mean = 0.0;
        for (double v : t) mean += v;
        mean /= t.size();
        std::sort(t.begin(), t.end());
        double p99 = t[std::min(t.size() - 1, static_cast<std::size_t>(0.99 * t.size()))];
        rep.methods.push_back({name, n_points, mean, p99});
    };
    stats(t_closed, "closed_form");
    stats(t_newton, "newton");
    return rep;
}

std::vector<std::pair<double, double>> find_self_intersections(const NurbsCurve& c) {
    NurbsCurve cf = c.backend() == Backend::Float ? c : c.to_backend(Backend::Float);
    const double u0 = cf.knots.front().to_double(), um = cf.knots.back().to_double();
    const double span = um - u0;

    // Coarse polyline crossing seeds.
    const int N = 256;
    std::vector<double> us(N + 1);
    std::vector<std::array<double, 2>> pts(N + 1);
    for (int i = 0; i <= N; ++i) {
        us[i] = u0 + span * i / N;
        Point p = curve_eval(cf, Scalar::real(us[i]));
        pts[i] = {p[0].to_double(), p[1].to_double()};
    }
    auto orient = [](const std::array<double, 2>& a, const std::array<double, 2>& b,
                     const std::array<double, 2>& q) {
        return (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]);
    };

    std::vector<std::pair<double, double>> found;
    for (int i = 0; i < N; ++i) {
        for (int j = i + 2; j < N; ++j) {
            double o1 = orient(pts[i], pts[i + 1], pts[j]);
            double o2 = orient(pts[i], pts[i + 1], pts[j + 1]);
            double o3 = orient(pts[j], pts[j + 1], pts[i]);
            double o4 = orient(pts[j], pts[j + 1], pts[i + 1]);
            if (!(((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)))) continue;

            // Refine with Newton on phi(u) - phi(v) = 0.
            double u = 0.5 * (us[i] + us[i + 1]), v = 0.5 * (us[j] + us[j + 1]);
            bool ok = false;
            for (int it = 0; it < 64; ++it) {
                auto du = curve_derivatives(cf, Scalar::real(u));
                auto dv = curve_derivatives(cf, Scalar::real(v));
                double gx = du[0][0].to_double() - dv[0][0].to_double();
                double gy = du[0][1].to_double() - dv[0][1].to_double();
                double a11 = du[1][0].to_double(), a12 = -dv[1][0].to_double();
                double a21 = du[1][1].to_double(), a22 = -dv[1][1].to_double();
                double det = a11 * a22 - a12 * a21;
                if (det == 0.0) break;
                double su = (gx * a22 - gy * a12) / det;
                double sv = (a11 * gy - a21 * gx) / det;
                u = std::clamp(u - su, u0, um);
                v = std::clamp(v - sv, u0, um);
                if (std::abs(su) < 1e-14 * span && std::abs(sv) < 1e-14 * span) {
                    ok = std::hypot(gx, gy) < 1e-10;
                    break;
                }
            }
            if (!ok || std::abs(u - v) < 1e-6 * span) continue;
            if (u > v) std::swap(u, v);
            bool dup = false;
            for (const auto& f : found)
                if (std::abs(f.first - u) < 1e-7 * span && std::abs(f.second - v) < 1e-7 * span)
                    dup = true;
            if (!dup) found.emplace_back(u, v);
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

}  // namespace nurbsinv
