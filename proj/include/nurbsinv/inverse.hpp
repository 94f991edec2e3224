#pragma once

#include "nurbsinv/bezier.hpp"

#include <optional>

namespace nurbsinv {

struct NonGeneralSegment : std::runtime_error {
    int segment;
    explicit NonGeneralSegment(int k)
        : std::runtime_error("segment " + std::to_string(k) +
                             " admits no minor-ratio inverse (non-general curve)"),
          segment(k) {}
};

struct PointNotOnCurve : std::runtime_error {
    PointNotOnCurve() : std::runtime_error("point has no preimage within tolerance") {}
};

// Sylvester matrix of X(t) = f1 - x*f0 and Y(t) = f2 - y*f0: 2d x 2d, left d
// columns hold the coefficients of X (a_0 at the top of each column, shifted
// down by one per column), right d columns likewise for Y. Rank drops exactly
// on the parametrized segment.
struct SylvesterPencil {
    int k;
    int degree;
    PolyMatrix matrix;
    BezierSegment segment;  // kept for on-segment validation samples
};

// Local inverse on the chart [0,1]: t = numerator/denominator, built from a
// consecutive pair of signed maximal minors.
struct LocalInverse {
    int k;
    BivariatePoly numerator, denominator;
    int row_choice;  // 1-based index i of the retained pair (rows i, i+1)
};

struct PiecewiseInverse {
    struct Piece {
        int k;
        Scalar u_lo, u_hi;
        LocalInverse inv;
    };
    NurbsCurve curve;
    std::vector<Piece> pieces;

    // Global parameter (u_hi - u_lo) * t(x, y) + u_lo on the piece covering
    // segment k.
    Scalar value_on_segment(const Point& q, int k) const;
    const Piece& piece_for_segment(int k) const;
    // phi^{-1}(phi(u)): locates the owning segment by u, then evaluates.
    Scalar roundtrip(const Scalar& u) const;
};

struct PreimageCandidate {
    Scalar u;
    int segment;
    double residual;
};

struct PreimageResult {
    std::vector<PreimageCandidate> candidates;
    bool multivalued = false;
};

struct SegmentReport {
    int k;
    bool general;
    std::string detail;
};

SylvesterPencil sylvester(const BezierSegment& seg);

// Minors delete a row pair (i, i+1) and the last column, signs (-1)^{row+col};
// on the segment the signed minors are proportional to (1, t, ..., t^{2d-1}),
// so t = (minor deleting row i+1)/(minor deleting row i). Starts at the given
// 1-based i and advances to the next pair when the denominator vanishes on the
// whole segment; throws NonGeneralSegment when every pair degenerates.
LocalInverse local_inverse_from_minors(const SylvesterPencil& p, int i = 1);

// Degree-2 closed form from the lifted active control point triple: with
// T = S_{k,2} weighted per column and D_i = det(T with row i-1 replaced by
// (rho_0, -rho_1, rho_2)), the two ratios (D2/2)/(D2/2 + D1) and
// D3/(D3 + D2/2) both equal t on the segment; their mediant
// (D2/2 + D3)/(D1 + D2 + D3) is stored (its denominator is a partition of
// unity and vanishes nowhere on the closed chart). Both ratios are
// cross-checked on-curve at construction.
LocalInverse quadratic_closed_form(const NurbsCurve& c, int k);

PiecewiseInverse global_inverse(const NurbsCurve& c);

// Candidates with chart value within [-tol, 1+tol] (clamped) and residual
// |phi(u) - point| <= tol, deduplicated across segment boundaries (the
// half-open ownership keeps the higher segment), sorted by residual.
// Multivalued when two or more distinct parameters survive.
PreimageResult invert_point(const PiecewiseInverse& pi, const Point& q, const Scalar& tol);

std::vector<SegmentReport> genericity_check(const NurbsCurve& c);

}  // namespace nurbsinv
