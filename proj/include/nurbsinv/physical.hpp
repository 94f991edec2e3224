#pragma once

#include "nurbsinv/inverse.hpp"

#include <map>
#include <memory>

namespace nurbsinv {

struct RationalFn {
    BivariatePoly num, den;
    Scalar eval(const Scalar& x, const Scalar& y) const { return num.eval(x, y) / den.eval(x, y); }
};

// Knots carried onto the curve: U_j = phi(v_j) with repetitions, the
// parametric preimages v_j stored alongside so scalar knot arithmetic never
// goes back through point inversion.
struct PhysicalKnotVector {
    std::vector<Point> points;      // U_0..U_M, with repetitions
    std::vector<Scalar> preimages;  // v_0..v_M, same layout
    std::vector<Point> reduced_points;
    std::vector<Scalar> reduced_preimages;
    std::vector<int> multiplicities;  // aligned with the reduced lists

    int count() const { return static_cast<int>(points.size()); }
};

// phi^{-1} restricted to one parametric segment, with the affine rescale to
// [u_lo, u_hi) folded into the numerator.
RationalFn segment_inverse_fn(const PiecewiseInverse::Piece& pc);

// Multiplicities mirroring the curve's own knot vector, with the endpoint
// multiplicities adjusted to p+1 for the target spline degree p.
std::vector<int> default_multiplicities(const NurbsCurve& c, int p);

// Physical knots phi(v_j) for the curve's distinct knots v_j, repeated per the
// requested multiplicities (one entry per distinct knot).
PhysicalKnotVector physical_knots(const NurbsCurve& c, const std::vector<int>& multiplicities);

// A rational spline living on the curve: per parametric segment, the
// restriction is a single rational function of (x, y). Built by the
// curve-side Cox-de Boor recursion with phi^{-1} in place of the parameter;
// segments outside the support window carry no branch (value 0).
struct PhysicalSpline {
    int k = 0;
    int degree = 0;
    std::map<int, RationalFn> branches;  // parametric segment index -> restriction
    std::shared_ptr<const PiecewiseInverse> inverse;
    PhysicalKnotVector knots;
};

PhysicalSpline physical_spline(std::shared_ptr<const PiecewiseInverse> inv,
                               const PhysicalKnotVector& pkv, int k, int p);

// Value at an on-curve point. With no segment hint the owning segment is
// located through invert_point (smallest-residual candidate).
Scalar spline_eval(const PhysicalSpline& s, const Point& q,
                   std::optional<int> segment_hint = std::nullopt);
Scalar spline_eval(const PhysicalSpline& s, const Point& q, std::optional<int> segment_hint,
                   const Scalar& tol);

// The inverse written in the spline basis: phi^{-1}(x, y) = sum_i xi_i N_i(x, y)
// with Greville coefficients xi_i taken over the physical knot preimages.
struct InverseSplineForm {
    int degree = 0;
    std::vector<Scalar> greville;
    std::vector<PhysicalSpline> splines;
    bool self_intersection_warning = false;

    Scalar eval(const Point& q, std::optional<int> segment_hint = std::nullopt) const;
};

InverseSplineForm inverse_spline_form(const NurbsCurve& c, int p);
// Same construction over an inverse that is already built (shared across p).
InverseSplineForm inverse_spline_form(std::shared_ptr<const PiecewiseInverse> inv, int p);

// Coarse geometric screen: does a dense parameter-ordered polyline of the
// curve cross itself away from shared sample endpoints?
bool curve_self_intersects(const NurbsCurve& c, int samples_per_segment = 64);

// Finite-difference probe of s(phi(u)) across an interior physical knot.
// For each order q = 0..max(0, p - mu) and each step h, the one-sided q-th
// differences from the left and right are compared; a jump that shrinks with
// h reads as continuous at that order, a persistent jump as a discontinuity.
struct ContinuityProbe {
    struct Order {
        int order;
        std::vector<double> jumps;  // |right - left|, one per step size
        bool continuous;
    };
    int knot_index = 0;      // index into the reduced physical knots
    Scalar u;                // parametric preimage of the probed knot
    int multiplicity = 0;
    int expected_order = 0;  // p - mu (may be negative: expected discontinuous)
    std::vector<Order> orders;
    int observed_order = -1;  // largest q continuous through all orders <= q
};

ContinuityProbe continuity_probe(const PhysicalSpline& s, int knot_index,
                                 const std::vector<Scalar>& h_list);

}  // namespace nurbsinv
