#pragma once

#include "nurbsinv/physical.hpp"

#include <string>

namespace nurbsinv {

// On-disk curve description. Numeric entries are either JSON numbers
// (terminating decimals convert exactly in the Exact backend) or fraction
// strings "p/q". Serialization of Exact data always uses fraction strings so
// parse -> serialize -> parse is the identity.
struct CurveDocument {
    int degree = 0;
    std::vector<Scalar> knots;
    std::vector<Point> control_points;
    std::vector<Scalar> weights;
    std::string name;

    NurbsCurve to_curve() const;  // throws ValidationError
    static CurveDocument from_curve(const NurbsCurve& c);
};

// Throws ValidationError naming the offending field and index.
CurveDocument parse_curve_document(const std::string& text, Backend b);
std::string serialize_curve_document(const CurveDocument& d);

// Convenience: read the file, parse, validate, return the curve.
NurbsCurve load_curve_file(const std::string& path, Backend b);

// Structured dumps of the two inverse representations. Polynomials appear as
// [e_x, e_y, coefficient] term lists.
std::string serialize_piecewise(const PiecewiseInverse& pi);
std::string serialize_spline_form(const InverseSplineForm& f);

}  // namespace nurbsinv
