#pragma once

#include "nurbsinv/scalar.hpp"

#include <array>
#include <string>
#include <vector>

namespace nurbsinv {

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

using Point = std::array<Scalar, 2>;

struct ActiveInterval {
    int k;  // knot index: the interval is [u_k, u_{k+1})
    Scalar lo, hi;
};

// Nondecreasing knots u_0..u_m, open-clamped: first and last knot each carry
// multiplicity d+1 for the curve degree d.
class KnotVector {
public:
    KnotVector(std::vector<Scalar> knots, int degree);

    int count() const { return static_cast<int>(u_.size()); }
    const Scalar& operator[](int i) const { return u_[i]; }
    const std::vector<Scalar>& knots() const { return u_; }
    int degree() const { return d_; }
    Backend backend() const { return u_.front().backend(); }
    const Scalar& front() const { return u_.front(); }
    const Scalar& back() const { return u_.back(); }

    // Distinct knots with multiplicities.
    void reduced(std::vector<Scalar>& values, std::vector<int>& multiplicities) const;
    // Nonzero-length intervals [u_k, u_{k+1}) in order.
    std::vector<ActiveInterval> active_intervals() const;
    // Interval ownership: half-open [u_k, u_{k+1}); u_m belongs to the last
    // active interval.
    int find_segment(const Scalar& u) const;

private:
    std::vector<Scalar> u_;
    int d_;
};

struct NurbsCurve {
    int degree;
    KnotVector knots;
    std::vector<Point> control_points;
    std::vector<Scalar> weights;
    std::string name;

    Backend backend() const { return knots.backend(); }
    void validate() const;  // throws ValidationError
    NurbsCurve to_backend(Backend b) const;
};

// Cox-de Boor recursion with the 0/0 -> 0 convention; the basis functions at
// u = u_m take their limit values (the last interval owns its right endpoint).
// The raw-list overload runs the recursion over any nondecreasing knot list,
// with no clamping or multiplicity requirements.
Scalar bspline_basis(const std::vector<Scalar>& U, int d, int k, const Scalar& u);
Scalar bspline_basis(const KnotVector& U, int d, int k, const Scalar& u);

Point curve_eval(const NurbsCurve& c, const Scalar& u);

// phi, phi', phi'' at u (quotient-rule on the weighted homogeneous form).
std::array<Point, 3> curve_derivatives(const NurbsCurve& c, const Scalar& u);

// Greville points xi_{i,p} = (u_{i+1} + ... + u_{i+p}) / p over an arbitrary
// knot list; one value per basis function (count = #knots - p - 1).
std::vector<Scalar> greville_points(const std::vector<Scalar>& knots, int p);

}  // namespace nurbsinv
