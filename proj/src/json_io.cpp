#include "nurbsinv/json_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace nurbsinv {

namespace {

using nlohmann::json;

json scalar_to_json(const Scalar& s) {
    if (s.is_exact()) return s.str();
    return s.to_double();
}

Scalar scalar_from_json(const json& v, Backend b) {
    if (v.is_string()) return Scalar::parse(v.get<std::string>(), b);
    // Round-tripping through dump() recovers the literal for terminating
    // decimals (shortest-round-trip formatting), which then parses exactly.
    if (v.is_number()) return Scalar::parse(v.dump(), b);
    throw ValidationError("expected a number or a fraction string");
}

json poly_to_json(const BivariatePoly& p) {
    json out = json::array();
    for (const auto& [key, c] : p.terms())
        out.push_back(json::array({key.first, key.second, scalar_to_json(c)}));
    return out;
}

}  // namespace

NurbsCurve CurveDocument::to_curve() const {
    NurbsCurve c{degree, KnotVector(knots, degree), control_points, weights, name};
    c.validate();
    return c;
}

CurveDocument CurveDocument::from_curve(const NurbsCurve& c) {
    return CurveDocument{c.degree, c.knots.knots(), c.control_points, c.weights, c.name};
}

CurveDocument parse_curve_document(const std::string& text, Backend b) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ValidationError(std::string("document: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("document: expected a JSON object");

    CurveDocument d;
    if (!j.contains("degree") || !j["degree"].is_number_integer())
        throw ValidationError("degree: required integer field");
    d.degree = j["degree"].get<int>();

    auto scalar_list = [&](const char* field, std::vector<Scalar>& out) {
        if (!j.contains(field) || !j[field].is_array())
            throw ValidationError(std::string(field) + ": required array field");
        const json& arr = j[field];
        for (std::size_t i = 0; i < arr.size(); ++i) {
            try {
                out.push_back(scalar_from_json(arr[i], b));
            } catch (const std::exception& e) {
                throw ValidationError(std::string(field) + "[" + std::to_string(i) +
                                      "]: " + e.what());
            }
        }
    };
    scalar_list("knots", d.knots);
    scalar_list("weights", d.weights);

    if (!j.contains("control_points") || !j["control_points"].is_array())
        throw ValidationError("control_points: required array field");
    const json& cps = j["control_points"];
    for (std::size_t i = 0; i < cps.size(); ++i) {
        const json& p = cps[i];
        if (!p.is_array() || p.size() != 2)
            throw ValidationError("control_points[" + std::to_string(i) + "]: expected [x, y]");
        try {
            d.control_points.push_back({scalar_from_json(p[0], b), scalar_from_json(p[1], b)});
        } catch (const std::exception& e) {
            throw ValidationError("control_points[" + std::to_string(i) + "]: " + e.what());
        }
    }

    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ValidationError("name: expected a string");
        d.name = j["name"].get<std::string>();
    }
    return d;
}

std::string serialize_curve_document(const CurveDocument& d) {
    json out;
    out["degree"] = d.degree;
    json ks = json::array();
    for (const auto& u : d.knots) ks.push_back(scalar_to_json(u));
    out["knots"] = ks;
    json cps = json::array();
    for (const auto& p : d.control_points)
        cps.push_back(json::array({scalar_to_json(p[0]), scalar_to_json(p[1])}));
    out["control_points"] = cps;
    json ws = json::array();
    for (const auto& w : d.weights) ws.push_back(scalar_to_json(w));
    out["weights"] = ws;
    if (!d.name.empty()) out["name"] = d.name;
    return out.dump(2) + "\n";
}

NurbsCurve load_curve_file(const std::string& path, Backend b) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open curve file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_curve_document(text.str(), b).to_curve();
}

std::string serialize_piecewise(const PiecewiseInverse& pi) {
    json out;
    out["form"] = "piecewise";
    out["curve"] = pi.curve.name;
    json segs = json::array();
    for (const auto& pc : pi.pieces) {
        RationalFn g = segment_inverse_fn(pc);
        json s;
        s["segment"] = pc.k;
        s["u_lo"] = scalar_to_json(pc.u_lo);
        s["u_hi"] = scalar_to_json(pc.u_hi);
        s["numerator"] = poly_to_json(g.num);
        s["denominator"] = poly_to_json(g.den);
        segs.push_back(s);
    }
    out["segments"] = segs;
    return out.dump(2) + "\n";
}

std::string serialize_spline_form(const InverseSplineForm& f) {
    json out;
    out["form"] = "spline";
    out["degree"] = f.degree;
    out["self_intersection_warning"] = f.self_intersection_warning;
    json gs = json::array();
    for (const auto& g : f.greville) gs.push_back(scalar_to_json(g));
    out["greville"] = gs;
    json splines = json::array();
    for (const auto& s : f.splines) {
        json rec;
        rec["index"] = s.k;
        json brs = json::array();
        for (const auto& [seg, fn] : s.branches) {
            json br;
            br["segment"] = seg;
            br["numerator"] = poly_to_json(fn.num);
            br["denominator"] = poly_to_json(fn.den);
            brs.push_back(br);
        }
        rec["branches"] = brs;
        splines.push_back(rec);
    }
    out["splines"] = splines;
    return out.dump(2) + "\n";
}

}  // namespace nurbsinv
