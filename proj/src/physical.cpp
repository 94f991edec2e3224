#include "nurbsinv/physical.hpp"

#include "nurbsinv/bspline.hpp"

#include <cmath>
#include <set>

namespace nurbsinv {

std::vector<int> default_multiplicities(const NurbsCurve& c, int p) {
    std::vector<Scalar> values;
    std::vector<int> mult;
    c.knots.reduced(values, mult);
    mult.front() = p + 1;
    mult.back() = p + 1;
    return mult;
}

PhysicalKnotVector physical_knots(const NurbsCurve& c, const std::vector<int>& multiplicities) {
    std::vector<Scalar> values;
    std::vector<int> mult;
    c.knots.reduced(values, mult);
    if (multiplicities.size() != values.size())
        throw ValidationError("multiplicities must align with the distinct knots");
    PhysicalKnotVector out;
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (multiplicities[j] < 1) throw ValidationError("multiplicities must be >= 1");
        Point q = curve_eval(c, values[j]);
        out.reduced_points.push_back(q);
        out.reduced_preimages.push_back(values[j]);
        out.multiplicities.push_back(multiplicities[j]);
        for (int r = 0; r < multiplicities[j]; ++r) {
            out.points.push_back(q);
            out.preimages.push_back(values[j]);
        }
    }
    return out;
}

RationalFn segment_inverse_fn(const PiecewiseInverse::Piece& pc) {
    BivariatePoly num =
        pc.inv.numerator * (pc.u_hi - pc.u_lo) + pc.inv.denominator * pc.u_lo;
    return {std::move(num), pc.inv.denominator};
}

PhysicalSpline physical_spline(std::shared_ptr<const PiecewiseInverse> inv,
                               const PhysicalKnotVector& pkv, int k, int p) {
    const int M = pkv.count() - 1;
    if (p < 0 || k < 0 || k > M - p - 1)
        throw std::invalid_argument("physical spline index out of range");
    const Backend b = inv->curve.backend();
    const auto& v = pkv.preimages;

    PhysicalSpline out;
    out.k = k;
    out.degree = p;
    out.inverse = inv;
    out.knots = pkv;

    if (p == 0) {
        // Indicator of the arc phi([v_k, v_{k+1})).
        RationalFn one{BivariatePoly::constant(Scalar::one(b)),
                       BivariatePoly::constant(Scalar::one(b))};
        for (const auto& pc : inv->pieces)
            if (!(pc.u_lo < v[k]) && !(v[k + 1] < pc.u_hi)) out.branches.emplace(pc.k, one);
        return out;
    }

    PhysicalSpline left = physical_spline(inv, pkv, k, p - 1);
    PhysicalSpline right = physical_spline(inv, pkv, k + 1, p - 1);
    const Scalar span_l = v[k + p] - v[k], span_r = v[k + p + 1] - v[k + 1];

    std::set<int> segs;
    for (const auto& [s, fn] : left.branches) segs.insert(s);
    for (const auto& [s, fn] : right.branches) segs.insert(s);

    for (int s : segs) {
        const auto& pc = inv->piece_for_segment(s);
        RationalFn g = segment_inverse_fn(pc);

        // Like denominators throughout: a degree-q branch on this segment has
        // denominator g.den^q, so the two recursion terms add numerator-wise.
        BivariatePoly num(b);
        if (!span_l.is_zero()) {
            auto it = left.branches.find(s);
            if (it != left.branches.end())
                num = num + (g.num - g.den * v[k]) * it->second.num * (Scalar::one(b) / span_l);
        }
        if (!span_r.is_zero()) {
            auto it = right.branches.find(s);
            if (it != right.branches.end())
                num = num +
                      (g.den * v[k + p + 1] - g.num) * it->second.num * (Scalar::one(b) / span_r);
        }
        if (num.is_zero()) continue;
        BivariatePoly den = BivariatePoly::constant(Scalar::one(b));
        for (int q = 0; q < p; ++q) den = den * g.den;
        out.branches.emplace(s, RationalFn{std::move(num), std::move(den)});
    }
    return out;
}

Scalar spline_eval(const PhysicalSpline& s, const Point& q, std::optional<int> segment_hint,
                   const Scalar& tol) {
    const Backend b = s.inverse->curve.backend();
    int seg;
    if (segment_hint) {
        seg = *segment_hint;
    } else {
        PreimageResult r = invert_point(*s.inverse, q, tol);  // throws PointNotOnCurve
        seg = r.candidates.front().segment;
    }
    auto it = s.branches.find(seg);
    if (it == s.branches.end()) return Scalar::zero(b);
    if (b == Backend::Float) {
        // The expanded branch numerator multiplies chart minors p times over
        // and its double coefficients are too ill-conditioned near the curve.
        // The branch equals the basis function pulled back through the chart
        // (the exact backend proves that identity on the expanded form), so
        // evaluate it in that factored shape: recover the chart parameter,
        // then run the recurrence on the preimage knots.
        const auto& pc = s.inverse->piece_for_segment(seg);
        double den = pc.inv.denominator.eval(q[0], q[1]).to_double();
        if (den != 0.0) {
            double t = pc.inv.numerator.eval(q[0], q[1]).to_double() / den;
            t = std::min(1.0, std::max(0.0, t));
            double lo = pc.u_lo.to_double(), hi = pc.u_hi.to_double();
            double u = lo + (hi - lo) * t;
            // The rounded chart coefficients leave a few trailing digits of
            // noise in u; two projection steps sharpen it to the limit the
            // curve evaluation supports.
            for (int round = 0; round < 2; ++round) {
                auto d = curve_derivatives(s.inverse->curve, Scalar::real(u));
                double ex = d[0][0].to_double() - q[0].to_double();
                double ey = d[0][1].to_double() - q[1].to_double();
                double d1x = d[1][0].to_double(), d1y = d[1][1].to_double();
                double r = ex * d1x + ey * d1y;
                double rp = d1x * d1x + d1y * d1y + ex * d[2][0].to_double() +
                            ey * d[2][1].to_double();
                if (rp == 0.0) break;
                double step = r / rp;
                u = std::min(hi, std::max(lo, u - step));
                if (std::abs(step) < 1e-17 * (hi - lo)) break;
            }
            // Keep u inside the piece's half-open span so the recurrence
            // agrees with the branch ownership (the last piece owns its
            // right endpoint).
            if (u >= hi && pc.k != s.inverse->pieces.back().k) u = std::nextafter(hi, lo);
            return bspline_basis(s.knots.preimages, s.degree, s.k, Scalar::real(u));
        }
        return it->second.eval(q[0], q[1]);
    }
    return it->second.eval(q[0], q[1]);
}

Scalar spline_eval(const PhysicalSpline& s, const Point& q, std::optional<int> segment_hint) {
    const Backend b = s.inverse->curve.backend();
    return spline_eval(s, q, segment_hint, Scalar::exact(1, 1000000000).to_backend(b));
}

Scalar InverseSplineForm::eval(const Point& q, std::optional<int> segment_hint) const {
    const Backend b = splines.front().inverse->curve.backend();
    int seg;
    if (segment_hint) {
        seg = *segment_hint;
    } else {
        PreimageResult r = invert_point(*splines.front().inverse, q,
                                        Scalar::exact(1, 1000000000).to_backend(b));
        seg = r.candidates.front().segment;
    }
    Scalar acc = Scalar::zero(b);
    for (std::size_t i = 0; i < splines.size(); ++i) {
        Scalar n = spline_eval(splines[i], q, seg);
        if (!n.is_zero()) acc += greville[i] * n;
    }
    return acc;
}

InverseSplineForm inverse_spline_form(std::shared_ptr<const PiecewiseInverse> inv, int p) {
    const NurbsCurve& c = inv->curve;
    const int m = c.knots.count() - 1;
    if (p < 1 || p > m - 1) throw std::invalid_argument("spline degree out of range");
    PhysicalKnotVector pkv = physical_knots(c, default_multiplicities(c, p));

    InverseSplineForm out;
    out.degree = p;
    out.greville = greville_points(pkv.preimages, p);
    const int M = pkv.count() - 1;
    for (int k = 0; k <= M - p - 1; ++k) out.splines.push_back(physical_spline(inv, pkv, k, p));
    out.self_intersection_warning = curve_self_intersects(c);
    return out;
}

InverseSplineForm inverse_spline_form(const NurbsCurve& c, int p) {
    return inverse_spline_form(std::make_shared<const PiecewiseInverse>(global_inverse(c)), p);
}

bool curve_self_intersects(const NurbsCurve& c, int samples_per_segment) {
    // Dense parameter-ordered polyline in doubles; a crossing between edges
    // that do not share a sample point flags a self-intersection.
    struct P {
        double x, y;
    };
    std::vector<P> pts;
    NurbsCurve cf = c.backend() == Backend::Float ? c : c.to_backend(Backend::Float);
    for (const auto& iv : cf.knots.active_intervals()) {
        double lo = iv.lo.to_double(), hi = iv.hi.to_double();
        int start = pts.empty() ? 0 : 1;  // segment start coincides with previous end
        for (int i = start; i <= samples_per_segment; ++i) {
            double u = lo + (hi - lo) * i / samples_per_segment;
            Point q = curve_eval(cf, Scalar::real(u));
            pts.push_back({q[0].to_double(), q[1].to_double()});
        }
    }
    auto orient = [](const P& a, const P& b, const P& cc) {
        return (b.x - a.x) * (cc.y - a.y) - (b.y - a.y) * (cc.x - a.x);
    };
    const int n = static_cast<int>(pts.size()) - 1;  // edges 0..n-1
    for (int i = 0; i < n; ++i) {
        for (int j = i + 2; j < n; ++j) {
            double o1 = orient(pts[i], pts[i + 1], pts[j]);
            double o2 = orient(pts[i], pts[i + 1], pts[j + 1]);
            double o3 = orient(pts[j], pts[j + 1], pts[i]);
            double o4 = orient(pts[j], pts[j + 1], pts[i + 1]);
            if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 &&
                o3 != 0 && o4 != 0)
                return true;
        }
    }
    return false;
}

ContinuityProbe continuity_probe(const PhysicalSpline& s, int knot_index,
                                 const std::vector<Scalar>& h_list) {
    const PhysicalKnotVector& pkv = s.knots;
    const int last = static_cast<int>(pkv.reduced_preimages.size()) - 1;
    if (knot_index <= 0 || knot_index >= last)
        throw std::invalid_argument("continuity probe needs an interior physical knot");
    if (h_list.empty()) throw std::invalid_argument("at least one step size required");

    const NurbsCurve& c = s.inverse->curve;
    const Scalar u0 = pkv.reduced_preimages[knot_index];
    auto F = [&](const Scalar& u) {
        return spline_eval(s, curve_eval(c, u), c.knots.find_segment(u));
    };

    ContinuityProbe out;
    out.knot_index = knot_index;
    out.u = u0;
    out.multiplicity = pkv.multiplicities[knot_index];
    out.expected_order = s.degree - out.multiplicity;

    // Binomial row for the q-th one-sided difference.
    auto binom = [](int q, int i) {
        long b = 1;
        for (int t = 0; t < i; ++t) b = b * (q - t) / (t + 1);
        return b;
    };

    const int top = std::max(0, out.expected_order);
    out.observed_order = -1;
    bool all_ok = true;
    for (int q = 0; q <= top; ++q) {
        ContinuityProbe::Order rec{q, {}, false};
        for (const auto& h : h_list) {
            Scalar rd = Scalar::zero(h.backend()), ld = rd;
            for (int i = 0; i <= q; ++i) {
                Scalar w = Scalar::exact((q - i) % 2 == 0 ? binom(q, i) : -binom(q, i), 1)
                               .to_backend(h.backend());
                rd += w * F(u0 + h * Scalar::exact(i + 1, 1).to_backend(h.backend()));
                ld += w * F(u0 - h * Scalar::exact(q - i + 1, 1).to_backend(h.backend()));
            }
            double scale = std::pow(h.to_double(), q);
            rec.jumps.push_back(std::abs((rd - ld).to_double()) / scale);
        }
        // Continuous when the jump decays with h (or is outright zero); a
        // persistent jump keeps its magnitude as h shrinks. The scaled
        // difference of a C^q function decays linearly in h, so the expected
        // shrink equals the step-list ratio; twice that is accepted.
        double first = rec.jumps.front(), lastj = rec.jumps.back();
        double ratio = h_list.back().to_double() / h_list.front().to_double();
        rec.continuous = lastj <= 1e-9 || lastj <= 2.0 * ratio * first + 1e-9;
        if (rec.continuous && all_ok)
            out.observed_order = q;
        else
            all_ok = false;
        out.orders.push_back(rec);
    }
    return out;
}

}  // namespace nurbsinv
