#include "nurbsinv/bspline.hpp"

namespace nurbsinv {

KnotVector::KnotVector(std::vector<Scalar> knots, int degree) : u_(std::move(knots)), d_(degree) {
    if (d_ < 1) throw ValidationError("degree must be >= 1");
    if (static_cast<int>(u_.size()) < 2 * (d_ + 1))
        throw ValidationError("knot vector too short for degree");
    for (std::size_t i = 1; i < u_.size(); ++i)
        if (u_[i] < u_[i - 1]) throw ValidationError("knots must be nondecreasing");
    if (!(u_.front() < u_.back())) throw ValidationError("knot vector must span an interval");
    const int m = static_cast<int>(u_.size()) - 1;
    for (int i = 1; i <= d_; ++i)
        if (!(u_[i] == u_[0]) || !(u_[m - i] == u_[m]))
            throw ValidationError("knot vector must be clamped (endpoint multiplicity degree+1)");
    std::vector<Scalar> values;
    std::vector<int> mult;
    reduced(values, mult);
    for (std::size_t j = 1; j + 1 < values.size(); ++j)
        if (mult[j] > d_ + 1) throw ValidationError("inner knot multiplicity exceeds degree+1");
}

void KnotVector::reduced(std::vector<Scalar>& values, std::vector<int>& multiplicities) const {
    values.clear();
    multiplicities.clear();
    for (const auto& u : u_) {
        if (!values.empty() && values.back() == u) {
            ++multiplicities.back();
        } else {
            values.push_back(u);
            multiplicities.push_back(1);
        }
    }
}

std::vector<ActiveInterval> KnotVector::active_intervals() const {
    std::vector<ActiveInterval> out;
    for (int k = 0; k + 1 < count(); ++k)
        if (u_[k] < u_[k + 1]) out.push_back({k, u_[k], u_[k + 1]});
    return out;
}

int KnotVector::find_segment(const Scalar& u) const {
    if (u < front() || back() < u) throw std::domain_error("parameter outside knot range");
    auto act = active_intervals();
    if (u == back()) return act.back().k;
    for (const auto& iv : act)
        if (iv.lo <= u && u < iv.hi) return iv.k;
    throw std::domain_error("parameter outside knot range");
}

void NurbsCurve::validate() const {
    const int n1 = static_cast<int>(control_points.size());
    if (knots.degree() != degree) throw ValidationError("knot vector degree mismatch");
    if (n1 != knots.count() - degree - 1)
        throw ValidationError("control point count must equal #knots - degree - 1");
    if (static_cast<int>(weights.size()) != n1)
        throw ValidationError("weights count must match control points");
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i].backend() != backend()) throw BackendMismatch();
        if (!(weights[i].sign() > 0))
            throw ValidationError("weights[" + std::to_string(i) + "] must be positive");
    }
    for (const auto& p : control_points)
        if (p[0].backend() != backend() || p[1].backend() != backend()) throw BackendMismatch();
}

NurbsCurve NurbsCurve::to_backend(Backend b) const {
    std::vector<Scalar> ks;
    for (const auto& u : knots.knots()) ks.push_back(u.to_backend(b));
    std::vector<Point> ps;
    for (const auto& p : control_points) ps.push_back({p[0].to_backend(b), p[1].to_backend(b)});
    std::vector<Scalar> ws;
    for (const auto& w : weights) ws.push_back(w.to_backend(b));
    return NurbsCurve{degree, KnotVector(std::move(ks), degree), std::move(ps), std::move(ws),
                      name};
}

Scalar bspline_basis(const std::vector<Scalar>& U, int d, int k, const Scalar& u) {
    const int m = static_cast<int>(U.size()) - 1;
    if (d == 0) {
        if (U[k] <= u && u < U[k + 1]) return Scalar::one(u.backend());
        // Right-endpoint closure: the last nonzero-length interval owns u_m.
        if (u == U[m] && U[k] < U[k + 1] && U[k + 1] == U[m]) return Scalar::one(u.backend());
        return Scalar::zero(u.backend());
    }
    Scalar acc = Scalar::zero(u.backend());
    if (U[k + d] > U[k]) {
        Scalar left = bspline_basis(U, d - 1, k, u);
        if (!left.is_zero()) acc += (u - U[k]) / (U[k + d] - U[k]) * left;
    }
    if (U[k + d + 1] > U[k + 1]) {
        Scalar right = bspline_basis(U, d - 1, k + 1, u);
        if (!right.is_zero()) acc += (U[k + d + 1] - u) / (U[k + d + 1] - U[k + 1]) * right;
    }
    return acc;
}

Scalar bspline_basis(const KnotVector& U, int d, int k, const Scalar& u) {
    return bspline_basis(U.knots(), d, k, u);
}

Point curve_eval(const NurbsCurve& c, const Scalar& u) {
    const Backend b = c.backend();
    Scalar den = Scalar::zero(b), nx = Scalar::zero(b), ny = Scalar::zero(b);
    for (std::size_t i = 0; i < c.control_points.size(); ++i) {
        Scalar N = bspline_basis(c.knots, c.degree, static_cast<int>(i), u);
        if (N.is_zero()) continue;
        Scalar wN = c.weights[i] * N;
        den += wN;
        nx += wN * c.control_points[i][0];
        ny += wN * c.control_points[i][1];
    }
    return {nx / den, ny / den};
}

namespace {

// Value and first two derivatives of one basis function.
std::array<Scalar, 3> basis_derivs(const KnotVector& U, int d, int k, const Scalar& u) {
    const Backend b = u.backend();
    Scalar N = bspline_basis(U, d, k, u);
    auto ratio = [&](int i, int dd) -> Scalar {
        // d / (u_{i+dd} - u_i), or 0 on a zero-length span (0/0 convention)
        if (!(U[i + dd] > U[i])) return Scalar::zero(b);
        return Scalar::exact(dd, 1).to_backend(b) / (U[i + dd] - U[i]);
    };
    Scalar d1 = Scalar::zero(b), d2 = Scalar::zero(b);
    if (d >= 1) {
        Scalar a = ratio(k, d), c = ratio(k + 1, d);
        Scalar n0 = bspline_basis(U, d - 1, k, u), n1 = bspline_basis(U, d - 1, k + 1, u);
        d1 = a * n0 - c * n1;
        if (d >= 2) {
            Scalar a2 = ratio(k, d - 1), b2 = ratio(k + 1, d - 1), c2 = ratio(k + 2, d - 1);
            Scalar m0 = bspline_basis(U, d - 2, k, u), m1 = bspline_basis(U, d - 2, k + 1, u),
                   m2 = bspline_basis(U, d - 2, k + 2, u);
            d2 = a * (a2 * m0 - b2 * m1) - c * (b2 * m1 - c2 * m2);
        }
    }
    return {N, d1, d2};
}

}  // namespace

std::array<Point, 3> curve_derivatives(const NurbsCurve& c, const Scalar& u) {
    const Backend b = c.backend();
    Scalar w0 = Scalar::zero(b), w1 = Scalar::zero(b), w2 = Scalar::zero(b);
    Point A0{Scalar::zero(b), Scalar::zero(b)}, A1 = A0, A2 = A0;
    for (std::size_t i = 0; i < c.control_points.size(); ++i) {
        auto nd = basis_derivs(c.knots, c.degree, static_cast<int>(i), u);
        for (int q = 0; q < 3; ++q) {
            if (nd[q].is_zero()) continue;
            Scalar s = c.weights[i] * nd[q];
            Point& A = q == 0 ? A0 : (q == 1 ? A1 : A2);
            Scalar& w = q == 0 ? w0 : (q == 1 ? w1 : w2);
            w += s;
            A[0] += s * c.control_points[i][0];
            A[1] += s * c.control_points[i][1];
        }
    }
    Point phi{A0[0] / w0, A0[1] / w0};
    Point d1{(A1[0] - phi[0] * w1) / w0, (A1[1] - phi[1] * w1) / w0};
    Scalar two = Scalar::exact(2, 1).to_backend(b);
    Point d2{(A2[0] - two * d1[0] * w1 - phi[0] * w2) / w0,
             (A2[1] - two * d1[1] * w1 - phi[1] * w2) / w0};
    return {phi, d1, d2};
}

std::vector<Scalar> greville_points(const std::vector<Scalar>& knots, int p) {
    if (p < 1) throw std::invalid_argument("greville degree must be >= 1");
    const int count = static_cast<int>(knots.size()) - p - 1;
    std::vector<Scalar> out;
    Scalar pinv = Scalar::exact(1, p).to_backend(knots.front().backend());
    for (int i = 0; i < count; ++i) {
        Scalar acc = Scalar::zero(knots.front().backend());
        for (int j = 1; j <= p; ++j) acc += knots[i + j];
        out.push_back(acc * pinv);
    }
    return out;
}

}  // namespace nurbsinv
