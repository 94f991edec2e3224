#pragma once

#include "nurbsinv/bspline.hpp"
#include "nurbsinv/poly.hpp"

namespace nurbsinv {

// Change of basis from the B-splines active on interval k to the Bernstein
// basis on the local chart t in [0,1]: row = Bernstein index, column = local
// spline index (global index k-d+column).
struct ExtractionMatrix {
    int k;
    std::vector<std::vector<Scalar>> m;  // (d+1) x (d+1)
};

// Homogeneous Bernstein form of one rational segment: in the chart
// t = (u - u_lo)/(u_hi - u_lo) the curve is (f1/f0, f2/f0), with the f_j
// stored as monomial coefficients in t.
struct BezierSegment {
    int k;
    Scalar u_lo, u_hi;
    UnivariatePoly f0, f1, f2;
    int degree;
};

// Computed by inserting u_lo and u_hi until both reach multiplicity d
// (Boehm knot insertion), tracking each refined control point as a linear
// combination of the original splines.
ExtractionMatrix extraction_matrix(const KnotVector& U, int d, int k);

// The degree-2 matrix with row r scaled by w_{k-2+r}; coincides with
// extraction_matrix when all weights are 1.
ExtractionMatrix quadratic_weighted_matrix(const NurbsCurve& c, int k);

// (Bernstein row vector) x S_{k,d} x (column of lifted weighted points
// w_i * (1, x_i, y_i)), converted to monomial coefficients.
BezierSegment segment_homogeneous(const NurbsCurve& c, int k);

}  // namespace nurbsinv
