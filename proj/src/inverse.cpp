#include "nurbsinv/inverse.hpp"

#include <algorithm>
#include <cmath>

namespace nurbsinv {

namespace {

// Interior chart samples used to validate a candidate minor pair.
std::vector<Scalar> validation_params(const BezierSegment& seg) {
    const Backend b = seg.f0.backend();
    std::vector<Scalar> ts;
    for (int j = 1; j <= seg.degree + 2; ++j)
        ts.push_back(Scalar::exact(j, seg.degree + 3).to_backend(b));
    return ts;
}

Point chart_point(const BezierSegment& seg, const Scalar& t) {
    Scalar w = seg.f0.eval(t);
    return {seg.f1.eval(t) / w, seg.f2.eval(t) / w};
}

bool values_match(const Scalar& a, const Scalar& b) {
    if (a.backend() == Backend::Exact) return a == b;
    return std::abs(a.to_double() - b.to_double()) < 1e-9;
}

}  // namespace

SylvesterPencil sylvester(const BezierSegment& seg) {
    const int d = seg.degree;
    if (d < 1) throw std::invalid_argument("segment degree must be >= 1");
    const Backend b = seg.f0.backend();
    PolyMatrix M(2 * d, b);
    const BivariatePoly x = BivariatePoly::var_x(b), y = BivariatePoly::var_y(b);
    for (int i = 0; i <= d; ++i) {
        BivariatePoly f0i = BivariatePoly::constant(seg.f0.coeff(i));
        BivariatePoly ai = BivariatePoly::constant(seg.f1.coeff(i)) - x * f0i;
        BivariatePoly bi = BivariatePoly::constant(seg.f2.coeff(i)) - y * f0i;
        for (int c = 0; c < d; ++c) {
            M.at(i + c, c) = ai;
            M.at(i + c, d + c) = bi;
        }
    }
    return SylvesterPencil{seg.k, d, std::move(M), seg};
}

LocalInverse local_inverse_from_minors(const SylvesterPencil& p, int i) {
    const int n = 2 * p.degree;
    if (i < 1 || i > n - 1) throw std::invalid_argument("row pair index out of range");
    const int last_col = n - 1;
    auto ts = validation_params(p.segment);

    auto signed_minor = [&](int row) {
        BivariatePoly m = det_poly_minor(p.matrix, row, last_col);
        return ((row + last_col) % 2 == 0) ? m : -m;
    };

    std::optional<BivariatePoly> den;  // reused when consecutive pairs share a minor
    for (int start = i; start <= n - 1; ++start) {
        BivariatePoly d0 = den ? *den : signed_minor(start - 1);
        BivariatePoly d1 = signed_minor(start);
        den = d1;

        bool ok = !d0.is_zero();
        for (const auto& t : ts) {
            if (!ok) break;
            Point q = chart_point(p.segment, t);
            Scalar dv = d0.eval(q[0], q[1]);
            if (dv.is_zero()) {
                ok = false;
                break;
            }
            ok = values_match(d1.eval(q[0], q[1]) / dv, t);
        }
        if (ok) return LocalInverse{p.k, std::move(d1), std::move(d0), start};
    }
    throw NonGeneralSegment(p.k);
}

LocalInverse quadratic_closed_form(const NurbsCurve& c, int k) {
    if (c.degree != 2) throw std::invalid_argument("closed form is defined for degree 2");
    const Backend b = c.backend();

    // Lifted active triple; collinearity (zero determinant) breaks the
    // construction and means the arc is a line segment.
    std::array<std::array<Scalar, 3>, 3> P;
    for (int i = 0; i < 3; ++i)
        P[i] = {Scalar::one(b), c.control_points[k - 2 + i][0], c.control_points[k - 2 + i][1]};
    auto det3s = [](const std::array<Scalar, 3>& r0, const std::array<Scalar, 3>& r1,
                    const std::array<Scalar, 3>& r2) {
        return r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0]) +
               r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]);
    };
    if (det3s(P[0], P[1], P[2]).is_zero())
        throw NonGeneralSegment(k);

    ExtractionMatrix S = extraction_matrix(c.knots, 2, k);
    std::array<std::array<Scalar, 3>, 3> T;
    for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 3; ++col) T[r][col] = S.m[r][col] * c.weights[k - 2 + col];

    // rho_i over the plain lifted triple, X = (1, x, y); each is linear in x,y.
    const BivariatePoly X0 = BivariatePoly::constant(Scalar::one(b));
    const BivariatePoly X1 = BivariatePoly::var_x(b), X2 = BivariatePoly::var_y(b);
    auto det3p = [&](const std::array<Scalar, 3>& r0, const std::array<Scalar, 3>& r1) {
        BivariatePoly m01 = X1 * r1[2] - X2 * r1[1];
        BivariatePoly m11 = X0 * r1[2] - X2 * r1[0];
        BivariatePoly m21 = X0 * r1[1] - X1 * r1[0];
        return m01 * r0[0] - m11 * r0[1] + m21 * r0[2];
    };
    std::array<BivariatePoly, 3> rho = {det3p(P[1], P[2]), -det3p(P[0], P[2]), det3p(P[0], P[1])};

    // D_i = det(T with row i-1 replaced by rho), expanded along that row.
    auto d_rep = [&](int row) {
        int r1 = (row + 1) % 3, r2 = (row + 2) % 3;
        if (r1 > r2) std::swap(r1, r2);
        Scalar m0 = T[r1][1] * T[r2][2] - T[r1][2] * T[r2][1];
        Scalar m1 = T[r1][0] * T[r2][2] - T[r1][2] * T[r2][0];
        Scalar m2 = T[r1][0] * T[r2][1] - T[r1][1] * T[r2][0];
        Scalar sgn = (row % 2 == 0) ? Scalar::one(b) : -Scalar::one(b);
        return (rho[0] * m0 - rho[1] * m1 + rho[2] * m2) * sgn;
    };
    BivariatePoly D1 = d_rep(0), D2 = d_rep(1), D3 = d_rep(2);

    Scalar half = Scalar::exact(1, 2).to_backend(b);
    BivariatePoly half_d2 = D2 * half;
    LocalInverse out{k, half_d2 + D3, D1 + D2 + D3, 0};

    // Both displayed ratio forms must agree with the stored mediant on-curve.
    BezierSegment seg = segment_homogeneous(c, k);
    for (const auto& t : validation_params(seg)) {
        Point q = chart_point(seg, t);
        Scalar na = half_d2.eval(q[0], q[1]), da = na + D1.eval(q[0], q[1]);
        Scalar nb = D3.eval(q[0], q[1]), db = nb + na;
        Scalar tm = out.numerator.eval(q[0], q[1]) / out.denominator.eval(q[0], q[1]);
        if (!values_match(na / da, tm) || !values_match(nb / db, tm) || !values_match(tm, t))
            throw std::logic_error("closed-form ratios disagree on segment " + std::to_string(k));
    }
    return out;
}

Scalar PiecewiseInverse::value_on_segment(const Point& q, int k) const {
    const Piece& pc = piece_for_segment(k);
    Scalar t = pc.inv.numerator.eval(q[0], q[1]) / pc.inv.denominator.eval(q[0], q[1]);
    return pc.u_lo + (pc.u_hi - pc.u_lo) * t;
}

const PiecewiseInverse::Piece& PiecewiseInverse::piece_for_segment(int k) const {
    for (const auto& pc : pieces)
        if (pc.k == k) return pc;
    throw std::invalid_argument("no piece for segment " + std::to_string(k));
}

Scalar PiecewiseInverse::roundtrip(const Scalar& u) const {
    int k = curve.knots.find_segment(u);
    return value_on_segment(curve_eval(curve, u), k);
}

namespace {

// d=2 degeneracy screen: a collinear active triple parametrizes a line.
bool collinear_triple(const NurbsCurve& c, int k) {
    const auto& P = c.control_points;
    Scalar det = (P[k - 1][0] - P[k - 2][0]) * (P[k][1] - P[k - 2][1]) -
                 (P[k - 1][1] - P[k - 2][1]) * (P[k][0] - P[k - 2][0]);
    return det.is_zero();
}

}  // namespace

PiecewiseInverse global_inverse(const NurbsCurve& c) {
    if (c.backend() == Backend::Float) {
        // Expanding determinant minors in double arithmetic loses several
        // digits to cancellation before a query is ever evaluated. Every
        // double is a rational, so build the minors exactly on the same data
        // and round each coefficient once at the end; evaluation then starts
        // from correctly rounded polynomials.
        PiecewiseInverse exact = global_inverse(c.to_backend(Backend::Exact));
        PiecewiseInverse out{c, {}};
        for (const auto& pc : exact.pieces) {
            // Rescale so the largest denominator coefficient is 1; the pair
            // is only defined up to a common factor and the exact integers
            // can be astronomically large.
            Scalar scale = Scalar::zero(Backend::Exact);
            for (const auto& [k, coef] : pc.inv.denominator.terms()) {
                Scalar a = coef.sign() < 0 ? -coef : coef;
                if (scale < a) scale = a;
            }
            Scalar inv_scale = Scalar::one(Backend::Exact) / scale;
            LocalInverse li{pc.inv.k, (pc.inv.numerator * inv_scale).to_backend(Backend::Float),
                            (pc.inv.denominator * inv_scale).to_backend(Backend::Float),
                            pc.inv.row_choice};
            out.pieces.push_back({pc.k, pc.u_lo.to_backend(Backend::Float),
                                  pc.u_hi.to_backend(Backend::Float), std::move(li)});
        }
        return out;
    }
    PiecewiseInverse out{c, {}};
    for (const auto& iv : c.knots.active_intervals()) {
        if (c.degree == 2 && collinear_triple(c, iv.k)) throw NonGeneralSegment(iv.k);
        BezierSegment seg = segment_homogeneous(c, iv.k);
        // The minor construction validates the segment round trip and throws
        // NonGeneralSegment itself when every row pair degenerates.
        LocalInverse li = local_inverse_from_minors(sylvester(seg));
        out.pieces.push_back({iv.k, iv.lo, iv.hi, std::move(li)});
    }
    return out;
}

PreimageResult invert_point(const PiecewiseInverse& pi, const Point& q, const Scalar& tol) {
    if (!(tol.sign() > 0)) throw std::invalid_argument("tolerance must be positive");
    const Backend b = pi.curve.backend();
    const Scalar one = Scalar::one(b);
    std::vector<PreimageCandidate> cands;
    for (const auto& pc : pi.pieces) {
        Scalar den = pc.inv.denominator.eval(q[0], q[1]);
        if (den.is_zero()) continue;
        Scalar t = pc.inv.numerator.eval(q[0], q[1]) / den;
        if (t < -tol || one + tol < t) continue;
        if (t.sign() < 0) t = Scalar::zero(b);
        if (one < t) t = one;
        Scalar u = pc.u_lo + (pc.u_hi - pc.u_lo) * t;
        Point p = curve_eval(pi.curve, u);
        Scalar dx = p[0] - q[0], dy = p[1] - q[1];
        Scalar r2 = dx * dx + dy * dy;
        if (r2 > tol * tol) continue;
        cands.push_back({u, pc.k, std::sqrt(r2.to_double())});
    }

    // Boundary dedupe: adjacent pieces both recover u at a shared knot; the
    // half-open ownership keeps the later piece. Distinct parameters (true
    // multivaluedness) are never merged.
    std::sort(cands.begin(), cands.end(),
              [](const auto& a, const auto& bq) { return a.segment < bq.segment; });
    std::vector<PreimageCandidate> dedup;
    const double utol = 10.0 * tol.to_double();
    for (auto& cand : cands) {
        bool dup = false;
        for (auto& kept : dedup) {
            bool same = (b == Backend::Exact)
                            ? kept.u == cand.u
                            : std::abs(kept.u.to_double() - cand.u.to_double()) <= utol;
            if (same) {
                kept = cand;  // later segment owns the boundary
                dup = true;
                break;
            }
        }
        if (!dup) dedup.push_back(cand);
    }
    if (dedup.empty()) throw PointNotOnCurve();

    std::stable_sort(dedup.begin(), dedup.end(),
                     [](const auto& a, const auto& bq) { return a.residual < bq.residual; });
    PreimageResult out;
    out.candidates = std::move(dedup);
    out.multivalued = out.candidates.size() >= 2;
    return out;
}

std::vector<SegmentReport> genericity_check(const NurbsCurve& c) {
    std::vector<SegmentReport> out;
    for (const auto& iv : c.knots.active_intervals()) {
        SegmentReport rep{iv.k, true, ""};
        if (c.degree == 2 && collinear_triple(c, iv.k)) {
            rep.general = false;
            rep.detail = "active control points are collinear";
            out.push_back(rep);
            continue;
        }
        try {
            BezierSegment seg = segment_homogeneous(c, iv.k);
            local_inverse_from_minors(sylvester(seg));  // round-trip proxy
            rep.detail = "minor-ratio round trip holds";
        } catch (const NonGeneralSegment&) {
            rep.general = false;
            rep.detail = "no valid minor pair";
        }
        out.push_back(rep);
    }
    return out;
}

}  // namespace nurbsinv
