#include "nurbsinv/json_io.hpp"
#include "nurbsinv/newton.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace nurbsinv;

namespace {

// Exit codes: 0 success, 1 validation error, 2 non-general curve,
// 3 internal invariant violation.
constexpr int kExitValidation = 1;
constexpr int kExitNonGeneral = 2;
constexpr int kExitInvariant = 3;

std::string fmtd(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Deterministic interior parameters, exact dyadic rationals so both backends
// sample the same points.
std::vector<Scalar> random_params(const NurbsCurve& c, int n, unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(1, (1L << 20) - 1);
    const Backend b = c.backend();
    const Scalar lo = c.knots.front(), span = c.knots.back() - c.knots.front();
    std::vector<Scalar> out;
    for (int i = 0; i < n; ++i)
        out.push_back(lo + span * Scalar::exact(dist(rng), 1L << 20).to_backend(b));
    return out;
}

std::vector<Scalar> uniform_params(const NurbsCurve& c, int n) {
    const Backend b = c.backend();
    const Scalar lo = c.knots.front(), span = c.knots.back() - c.knots.front();
    std::vector<Scalar> out;
    for (int i = 0; i < n; ++i)
        out.push_back(lo + span * Scalar::exact(i, n - 1 > 0 ? n - 1 : 1).to_backend(b));
    return out;
}

int cmd_eval(const NurbsCurve& c, const std::vector<std::string>& u_texts) {
    for (const auto& text : u_texts) {
        Scalar u = Scalar::parse(text, c.backend());
        c.knots.find_segment(u);  // domain check, throws std::domain_error
        Point q = curve_eval(c, u);
        std::cout << u.str() << " " << q[0].str() << " " << q[1].str() << "\n";
    }
    return 0;
}

int cmd_invert(const NurbsCurve& c, const std::string& points_path, const Scalar& tol) {
    std::ifstream in(points_path);
    if (!in) throw ValidationError("cannot open points file: " + points_path);
    PiecewiseInverse inv = global_inverse(c);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string xs, ys;
        if (!(ls >> xs >> ys) || xs[0] == '#') continue;
        Point q{Scalar::parse(xs, c.backend()), Scalar::parse(ys, c.backend())};
        try {
            PreimageResult r = invert_point(inv, q, tol);
            for (const auto& cand : r.candidates) {
                std::cout << xs << " " << ys << " " << cand.u.str() << " " << cand.segment << " "
                          << fmtd(cand.residual) << (r.multivalued ? " MULTI" : "") << "\n";
            }
        } catch (const PointNotOnCurve&) {
            std::cout << xs << " " << ys << " NOT_ON_CURVE\n";
        }
    }
    return 0;
}

int cmd_inverse_repr(const NurbsCurve& c, const std::string& form, int degree) {
    if (form == "spline")
        std::cout << serialize_spline_form(inverse_spline_form(c, degree));
    else
        std::cout << serialize_piecewise(global_inverse(c));
    return 0;
}

int cmd_check(const NurbsCurve& c, int extra_degree) {
    bool all_ok = true;
    auto report = [&](const std::string& name, bool pass, double max_err) {
        std::cout << (pass ? "PASS" : "FAIL") << " " << name << " max_err=" << fmtd(max_err)
                  << "\n";
        if (!pass) all_ok = false;
    };
    const bool exact = c.backend() == Backend::Exact;

    for (const auto& rep : genericity_check(c))
        if (!rep.general) {
            std::cout << "FAIL genericity segment=" << rep.k << " " << rep.detail << "\n";
            return kExitNonGeneral;
        }
    std::cout << "PASS genericity\n";

    auto inv = std::make_shared<const PiecewiseInverse>(global_inverse(c));

    {
        double max_err = 0.0;
        bool pass = true;
        for (const auto& u : uniform_params(c, 200)) {
            if (!exact) {
                // Float: skip the immediate vicinity of segment boundaries,
                // where ownership of the half-open interval flips.
                bool near = false;
                for (const auto& iv : c.knots.active_intervals())
                    if (std::abs(u.to_double() - iv.lo.to_double()) < 1e-6 ||
                        std::abs(u.to_double() - iv.hi.to_double()) < 1e-6)
                        near = true;
                if (near) continue;
            }
            Scalar err = inv->roundtrip(u) - u;
            max_err = std::max(max_err, std::abs(err.to_double()));
            if (exact ? !err.is_zero() : std::abs(err.to_double()) > 1e-9) pass = false;
        }
        report("roundtrip", pass, max_err);
    }

    std::set<int> degrees{1, 2};
    if (extra_degree > 0) degrees.insert(extra_degree);
    for (int p : degrees) {
        InverseSplineForm form = inverse_spline_form(inv, p);
        const auto& v = form.splines.front().knots.preimages;
        auto samples = random_params(c, 50, 0xabcdefUL + p);

        double pu_err = 0.0, pb_err = 0.0, agree_err = 0.0;
        bool nonneg = true, support = true;
        for (const auto& u : samples) {
            int seg = c.knots.find_segment(u);
            Point q = curve_eval(c, u);
            Scalar sum = Scalar::zero(c.backend());
            for (std::size_t k = 0; k < form.splines.size(); ++k) {
                Scalar val = spline_eval(form.splines[k], q, seg);
                sum += val;
                if (val.sign() < 0 && (exact || val.to_double() < -1e-12)) nonneg = false;
                // Support window [v_k, v_{k+p+1}): outside it the value is 0.
                if (u < v[k] || !(u < v[k + p + 1])) {
                    if (exact ? !val.is_zero() : std::abs(val.to_double()) > 1e-12)
                        support = false;
                }
                Scalar n = bspline_basis(v, p, static_cast<int>(k), u);
                pb_err = std::max(pb_err, std::abs((val - n).to_double()));
            }
            pu_err = std::max(pu_err, std::abs((sum - Scalar::one(c.backend())).to_double()));
            Scalar diff = form.eval(q, seg) - inv->value_on_segment(q, seg);
            agree_err = std::max(agree_err, std::abs(diff.to_double()));
        }
        std::string tag = "p=" + std::to_string(p);
        report("partition_of_unity " + tag, exact ? pu_err == 0.0 : pu_err < 1e-11, pu_err);
        report("nonnegativity " + tag, nonneg, 0.0);
        report("local_support " + tag, support, 0.0);
        report("pullback_identity " + tag, exact ? pb_err == 0.0 : pb_err < 1e-11, pb_err);
        report("spline_form_agreement " + tag, exact ? agree_err == 0.0 : agree_err < 1e-9,
               agree_err);
    }

    if (curve_self_intersects(c)) std::cout << "NOTICE self-intersection detected\n";
    return all_ok ? 0 : kExitInvariant;
}

int cmd_plot_data(const NurbsCurve& c, const std::string& what, int samples, int degree,
                  const std::string& prefix) {
    if (samples < 2) throw ValidationError("--samples must be >= 2");
    auto open = [&](const std::string& name) {
        std::ofstream out(name);
        if (!out) throw ValidationError("cannot write " + name);
        std::cout << name << "\n";
        return out;
    };
    auto us = uniform_params(c, samples);
    if (what == "curve") {
        auto out = open(prefix + "-curve.dat");
        for (const auto& u : us) {
            Point q = curve_eval(c, u);
            out << fmtd(u.to_double()) << " " << fmtd(q[0].to_double()) << " "
                << fmtd(q[1].to_double()) << "\n";
        }
    } else if (what == "splines") {
        InverseSplineForm form = inverse_spline_form(c, degree);
        for (std::size_t k = 0; k < form.splines.size(); ++k) {
            auto out = open(prefix + "-spline-" + std::to_string(k) + ".dat");
            for (const auto& u : us) {
                Point q = curve_eval(c, u);
                Scalar val = spline_eval(form.splines[k], q, c.knots.find_segment(u));
                out << fmtd(q[0].to_double()) << " " << fmtd(q[1].to_double()) << " "
                    << fmtd(val.to_double()) << "\n";
            }
        }
    } else {  // inverse
        PiecewiseInverse inv = global_inverse(c);
        auto out = open(prefix + "-inverse.dat");
        for (const auto& u : us) {
            Point q = curve_eval(c, u);
            Scalar rec = inv.value_on_segment(q, c.knots.find_segment(u));
            out << fmtd(q[0].to_double()) << " " << fmtd(q[1].to_double()) << " "
                << fmtd(rec.to_double()) << "\n";
        }
    }
    return 0;
}

int cmd_bench(const NurbsCurve& c, int points, const Scalar& tol) {
    NurbsCurve cf = c.backend() == Backend::Float ? c : c.to_backend(Backend::Float);
    OracleConfig cfg;
    cfg.tolerance = tol.to_backend(Backend::Float);
    std::cout << bench_compare(cf, points, cfg).to_text();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form inversion of planar NURBS curves"};
    app.require_subcommand(1);

    std::string backend_text = "exact", tol_text = "1e-9";
    int degree = 1;
    app.add_option("--backend", backend_text, "numeric backend (exact|float)")
        ->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--tol", tol_text, "inversion tolerance (default 1e-9)");
    app.add_option("--degree", degree, "physical spline degree (default 1)");

    std::string curve_file, points_file, form = "piecewise", what = "curve", prefix = "plot";
    std::vector<std::string> u_texts;
    int samples = 100, bench_points = 10000;

    CLI::App* eval = app.add_subcommand("eval", "evaluate the curve at parameters");
    eval->add_option("curve", curve_file, "curve document")->required();
    eval->add_option("-u,--u", u_texts, "parameter values")->required();

    CLI::App* invert = app.add_subcommand("invert", "find preimages of points");
    invert->add_option("curve", curve_file, "curve document")->required();
    invert->add_option("points", points_file, "file of x y lines")->required();

    CLI::App* repr = app.add_subcommand("inverse-repr", "serialize the inverse");
    repr->add_option("curve", curve_file, "curve document")->required();
    repr->add_option("--form", form, "piecewise|spline")
        ->check(CLI::IsMember({"piecewise", "spline"}));

    CLI::App* check = app.add_subcommand("check", "run the invariant suite");
    check->add_option("curve", curve_file, "curve document")->required();

    CLI::App* plot = app.add_subcommand("plot-data", "emit plot data files");
    plot->add_option("curve", curve_file, "curve document")->required();
    plot->add_option("--what", what, "curve|splines|inverse")
        ->check(CLI::IsMember({"curve", "splines", "inverse"}));
    plot->add_option("--samples", samples, "sample count (default 100)");
    plot->add_option("--out", prefix, "output file prefix");

    CLI::App* bench = app.add_subcommand("bench", "closed form vs newton oracle (float backend)");
    bench->add_option("curve", curve_file, "curve document")->required();
    bench->add_option("--points", bench_points, "sample count (default 10000)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitValidation;
    }

    const Backend b = backend_text == "float" ? Backend::Float : Backend::Exact;
    try {
        NurbsCurve c = load_curve_file(curve_file, b);
        Scalar tol = Scalar::parse(tol_text, b);
        if (app.got_subcommand(eval)) return cmd_eval(c, u_texts);
        if (app.got_subcommand(invert)) return cmd_invert(c, points_file, tol);
        if (app.got_subcommand(repr)) return cmd_inverse_repr(c, form, degree);
        if (app.got_subcommand(check)) return cmd_check(c, degree > 2 ? degree : 0);
        if (app.got_subcommand(plot)) return cmd_plot_data(c, what, samples, degree, prefix);
        if (app.got_subcommand(bench)) return cmd_bench(c, bench_points, tol);
        return kExitValidation;
    } catch (const NonGeneralSegment& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNonGeneral;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInvariant;
    }
}
