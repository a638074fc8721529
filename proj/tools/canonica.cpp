#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "canonica/appell.hpp"
#include "canonica/errors.hpp"
#include "canonica/fields.hpp"
#include "canonica/suite.hpp"
#include "canonica/symplectic.hpp"
#include "canonica/transforms.hpp"

using namespace canonica;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNumeric = 2, kTolerance = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string p;
    while (std::getline(ss, p, sep)) parts.push_back(p);
    return parts;
}

double to_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError("bad number '" + s + "' in " + what);
    }
}

int to_int(const std::string& s, const std::string& what) {
    double v = to_double(s, what);
    if (v != static_cast<int>(v)) throw UsageError("expected an integer in " + what);
    return static_cast<int>(v);
}

Grid1D parse_grid(const std::string& spec, GridKind kind) {
    auto p = split(spec, ':');
    if (p.size() != 3) throw UsageError("grid must be start:end:count, got '" + spec + "'");
    return Grid1D::from_range(kind, to_double(p[0], "grid"), to_double(p[1], "grid"), to_int(p[2], "grid"));
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Inline JSON, or @path to a JSON file.
json parse_json_arg(const std::string& arg) {
    std::string text = !arg.empty() && arg[0] == '@' ? slurp(arg.substr(1)) : arg;
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("json: ") + e.what());
    }
}

SampledField read_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    return read_field_csv(in);
}

void write_field(const std::string& path, const SampledField& f) {
    if (path.empty() || path == "-") {
        write_field_csv(std::cout, f);
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write '" + path + "'");
    write_field_csv(out, f);
}

struct FamilyArgs {
    std::string family;
    double lambda = 1.0;
    int n = 0;
    int m = 0;
    double mu = 3.0;
    double width = 1.0;
    double center = 0.0;
    double apod = 0.0;

    void add(CLI::App* app, bool required) {
        auto* o = app->add_option("--family", family, "analytic family name");
        if (required) o->required();
        app->add_option("--lambda", lambda, "family parameter lambda");
        app->add_option("--n", n, "mode / polynomial index");
        app->add_option("--m,--radial-m", m, "azimuthal index");
        app->add_option("--mu", mu, "radial heat dimension parameter");
        app->add_option("--width", width, "Gaussian width");
        app->add_option("--center", center, "Gaussian center");
        app->add_option("--apod", apod, "Airy apodization");
    }

    AnalyticField build() const {
        auto f = family_from_name(family);
        if (!f) throw UsageError("unknown family '" + family + "'");
        switch (*f) {
            case Family::PlaneChirp: return AnalyticField::plane_chirp(lambda);
            case Family::PointSrc: return AnalyticField::point_src(lambda);
            case Family::AiryKM: return AnalyticField::airy_km(lambda);
            case Family::AiryBB: return AnalyticField::airy_bb(lambda, apod);
            case Family::Bessel: return AnalyticField::bessel(lambda, m);
            case Family::BesselGauss: return AnalyticField::bessel_gauss(lambda, m);
            case Family::StdHG: return AnalyticField::std_hg(n);
            case Family::StdLG: return AnalyticField::std_lg(n, m);
            case Family::HeatPoly: return AnalyticField::heat_poly(n);
            case Family::HeatAssoc: return AnalyticField::heat_assoc(n);
            case Family::FundHeat: return AnalyticField::fund_heat();
            case Family::RadialHeatPoly: return AnalyticField::radial_heat_poly(n, mu);
            case Family::RadialHeatAppell: return AnalyticField::radial_heat_appell(n, mu);
            case Family::FundRadialHeat: return AnalyticField::fund_radial_heat(mu);
            case Family::Gauss: return AnalyticField::gauss(width, center);
        }
        throw UsageError("unknown family");
    }
};

struct QuadArgs {
    std::string scheme = "gl";
    int panels = 8;
    int nodes = 64;
    double apod = -1.0;
    bool apod_set = false;

    void add(CLI::App* app) {
        app->add_option("--scheme", scheme, "gl or chirp-fft")->check(CLI::IsMember({"gl", "chirp-fft"}));
        app->add_option("--panels", panels, "minimum quadrature panel count");
        app->add_option("--nodes", nodes, "Gauss-Legendre nodes per panel");
        app->add_option("--apodize", apod, "Gaussian apodization width (<= 0: quarter span)")
            ->each([this](const std::string&) { apod_set = true; });
    }

    QuadratureConfig build() const {
        QuadratureConfig c;
        c.scheme = scheme == "chirp-fft" ? Scheme::ChirpFFT : Scheme::GaussLegendreComposite;
        c.panels = panels;
        c.nodes_per_panel = nodes;
        if (apod_set) c.apodization = apod;
        c.validate();
        return c;
    }
};

Equation parse_equation(const std::string& name, int m, double mu) {
    if (name == "pwe") return Equation::pwe();
    if (name == "radial-pwe") return Equation::radial_pwe(m);
    if (name == "heat") return Equation::heat();
    if (name == "radial-heat") return Equation::radial_heat(mu);
    throw UsageError("unknown equation '" + name + "'");
}

TransformSpec parse_preset(const std::string& preset) {
    auto p = split(preset, ':');
    const std::string& k = p[0];
    auto arg = [&](std::size_t i) {
        if (i >= p.size()) throw UsageError("preset '" + preset + "' is missing parameters");
        return to_double(p[i], "preset");
    };
    auto iarg = [&](std::size_t i) {
        if (i >= p.size()) throw UsageError("preset '" + preset + "' is missing parameters");
        return to_int(p[i], "preset");
    };
    if (k == "frft") return FrFT{arg(1)};
    if (k == "fourier") return FrFT{1.0};
    if (k == "frlaplace") return FrLaplace{arg(1)};
    if (k == "fresnel") return FresnelProp{arg(1)};
    if (k == "poisson") return PoissonProp{arg(1)};
    if (k == "hankel") return Hankel{iarg(1)};
    if (k == "frhankel") return FrHankel{iarg(1), arg(2)};
    if (k == "hankel-type") return HankelType{iarg(1), arg(2), arg(3)};
    if (k == "radial-laplace") return RadialLaplace{iarg(1), arg(2), arg(3)};
    if (k == "radial-heat") return RadialHeatProp{arg(1), arg(2)};
    if (k == "bg") return BarutGirardello{arg(1), iarg(2)};
    throw UsageError("unknown preset '" + k + "'");
}

SympMat2 parse_matrix_token(const std::string& tok) {
    if (!tok.empty() && (tok[0] == '{' || tok[0] == '@')) return matrix_from_json(parse_json_arg(tok));
    auto p = split(tok, ':');
    const std::string& k = p.empty() ? tok : p[0];
    auto arg = [&]() {
        if (p.size() != 2) throw UsageError("matrix token '" + tok + "' needs one parameter");
        return to_double(p[1], "matrix token");
    };
    if (k == "free") return mat_free(arg());
    if (k == "lens") return mat_lens(arg());
    if (k == "scale") return mat_scale(arg());
    if (k == "fourier") return mat_fourier(arg());
    if (k == "laplace") return mat_laplace(arg());
    if (k == "poisson") return mat_poisson(arg());
    if (k == "gauss") return mat_gauss_aperture(arg());
    if (k == "bargmann") return mat_bargmann();
    throw UsageError("unknown matrix token '" + tok + "'");
}

SympMat2 compose_tokens(const std::vector<std::string>& toks) {
    SympMat2 m = identity();
    for (const auto& t : toks) m = compose(m, parse_matrix_token(t));
    return m;
}

json factor_json(const SympMat2& m) {
    json j;
    j["matrix"] = to_json(m);
    if (is_real(m)) {
        auto w = wei_norman_real(m);
        j["real"] = {{"lens_power", w.lens_power},
                     {"scale", {w.scale.real(), w.scale.imag()}},
                     {"free_length", {w.free_length.real(), w.free_length.imag()}}};
    }
    if (is_lform(m)) {
        auto w = wei_norman_lform(m);
        j["lform"] = {{"inv_width", w.inv_width}, {"scale", w.scale}, {"tau", w.tau}};
    }
    if (!j.contains("real") && !j.contains("lform")) throw NotLForm("matrix is neither real nor of L-form");
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"canonica: canonical transforms and Appell maps"};
    app.require_subcommand(1);

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "sample an analytic field");
    FamilyArgs s_fam;
    s_fam.add(sample_cmd, true);
    std::string s_grid, s_out;
    double s_evol = 0.0;
    sample_cmd->add_option("--grid", s_grid, "start:end:count")->required();
    sample_cmd->add_option("--evol", s_evol, "evolution coordinate");
    sample_cmd->add_option("--out", s_out, "output CSV (default stdout)");

    // transform
    auto* transform_cmd = app.add_subcommand("transform", "apply a canonical transform to a field file");
    std::string t_preset, t_spec, t_in, t_grid, t_out;
    QuadArgs t_quad;
    auto* t_preset_opt = transform_cmd->add_option("--preset", t_preset, "e.g. frft:0.5, hankel:1, fresnel:0.7");
    transform_cmd->add_option("--spec", t_spec, "transform JSON or @file")->excludes(t_preset_opt);
    transform_cmd->add_option("--in", t_in, "input field CSV")->required();
    transform_cmd->add_option("--grid", t_grid, "output grid start:end:count")->required();
    transform_cmd->add_option("--out", t_out, "output CSV (default stdout)");
    t_quad.add(transform_cmd);

    // propagate
    auto* prop_cmd = app.add_subcommand("propagate", "propagate a field file along its equation");
    std::string p_eq = "pwe", p_in, p_grid, p_out;
    double p_evol = 0.0, p_mu = 3.0;
    int p_m = 0;
    QuadArgs p_quad;
    prop_cmd->add_option("--eq", p_eq, "pwe | radial-pwe | heat | radial-heat");
    prop_cmd->add_option("--evol", p_evol, "evolution coordinate")->required();
    prop_cmd->add_option("--m,--radial-m", p_m, "azimuthal index");
    prop_cmd->add_option("--mu", p_mu, "radial heat dimension parameter");
    prop_cmd->add_option("--in", p_in, "input field CSV")->required();
    prop_cmd->add_option("--grid", p_grid, "output grid start:end:count")->required();
    prop_cmd->add_option("--out", p_out, "output CSV (default stdout)");
    p_quad.add(prop_cmd);

    // appell
    auto* appell_cmd = app.add_subcommand("appell", "apply an Appell map");
    FamilyArgs a_fam;
    a_fam.add(appell_cmd, false);
    std::string a_eq, a_in, a_grid, a_mid, a_out, a_spec;
    double a_alpha = 1.0, a_evol = 0.0;
    bool a_inverse = false;
    QuadArgs a_quad;
    appell_cmd->add_option("--eq", a_eq, "pwe | radial-pwe | heat | radial-heat (default from family)");
    appell_cmd->add_option("--alpha", a_alpha, "fractional order");
    appell_cmd->add_option("--evol", a_evol, "evolution coordinate of the output");
    appell_cmd->add_flag("--inverse", a_inverse, "apply the inverse map");
    appell_cmd->add_option("--spec", a_spec, "AppellSpec JSON or @file (overrides --eq/--alpha/--evol)");
    appell_cmd->add_option("--in", a_in, "source field CSV (numeric path)");
    appell_cmd->add_option("--grid", a_grid, "output grid start:end:count")->required();
    appell_cmd->add_option("--mid", a_mid, "grid of the transformed source (numeric path)");
    appell_cmd->add_option("--out", a_out, "output CSV (default stdout)");
    a_quad.add(appell_cmd);

    // matrix
    auto* matrix_cmd = app.add_subcommand("matrix", "compose, invert or factor ray matrices");
    std::string m_op;
    std::vector<std::string> m_tokens;
    matrix_cmd->add_option("op", m_op, "compose | invert | factor")
        ->required()
        ->check(CLI::IsMember({"compose", "invert", "factor"}));
    matrix_cmd->add_option("tokens", m_tokens, "free:z lens:p scale:s fourier:a laplace:a poisson:t gauss:w bargmann "
                                               "or matrix JSON")
        ->required();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run verification checks");
    std::string v_suite = "all", v_report;
    verify_cmd->add_option("suite", v_suite, "suite name or 'all'");
    verify_cmd->add_option("--report", v_report, "JSON report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*sample_cmd) {
            AnalyticField f = s_fam.build();
            GridKind kind = f.equation().is_radial() ? GridKind::HalfLine : GridKind::FullLine;
            write_field(s_out, sample(f, parse_grid(s_grid, kind), s_evol));
        } else if (*transform_cmd) {
            if (t_preset.empty() && t_spec.empty()) throw UsageError("transform needs --preset or --spec");
            TransformSpec spec = t_preset.empty() ? transform_from_json(parse_json_arg(t_spec)) : parse_preset(t_preset);
            SampledField in = read_field(t_in);
            GridKind kind = is_radial(spec) ? GridKind::HalfLine : GridKind::FullLine;
            write_field(t_out, apply(spec, in, parse_grid(t_grid, kind), t_quad.build()));
        } else if (*prop_cmd) {
            Equation eq = parse_equation(p_eq, p_m, p_mu);
            SampledField in = read_field(p_in);
            Grid1D g = parse_grid(p_grid, eq.is_radial() ? GridKind::HalfLine : GridKind::FullLine);
            QuadratureConfig cfg = p_quad.build();
            SampledField out;
            switch (eq.kind) {
                case EquationKind::PWE: out = apply(FresnelProp{p_evol}, in, g, cfg); break;
                case EquationKind::RadialPWE: out = apply(RadialCT{mat_free(p_evol), 2.0, eq.m}, in, g, cfg); break;
                case EquationKind::Heat: out = poisson_propagate(in, p_evol, g, cfg); break;
                case EquationKind::RadialHeat: out = radial_heat_propagate(in, p_evol, eq.mu, g, cfg); break;
            }
            out.evol = in.evol + p_evol;
            write_field(p_out, out);
        } else if (*appell_cmd) {
            AppellSpec spec;
            if (!a_spec.empty()) {
                spec = AppellSpec::from_json(parse_json_arg(a_spec));
            } else {
                std::optional<AnalyticField> fam;
                if (!a_fam.family.empty()) fam = a_fam.build();
                Equation eq = a_eq.empty() ? (fam ? fam->equation() : throw UsageError("appell needs --eq or --family"))
                                           : parse_equation(a_eq, a_fam.m, a_fam.mu);
                spec = AppellSpec{eq, a_alpha, a_evol, a_inverse ? Direction::Inverse : Direction::Forward};
            }
            spec.validate();
            Grid1D g = parse_grid(a_grid, spec.equation.is_radial() ? GridKind::HalfLine : GridKind::FullLine);
            if (!a_in.empty()) {
                if (!a_fam.family.empty()) throw UsageError("--in and --family are exclusive");
                SampledField src = read_field(a_in);
                std::optional<Grid1D> mid;
                if (!a_mid.empty()) mid = parse_grid(a_mid, g.kind);
                write_field(a_out, appell_numeric(src, spec, g, a_quad.build(), mid));
            } else {
                if (a_fam.family.empty()) throw UsageError("appell needs --family or --in");
                FieldExpr w = appell_analytic(a_fam.build(), spec);
                write_field(a_out, sample(w, g, spec.evol));
            }
        } else if (*matrix_cmd) {
            json j;
            if (m_op == "compose") j = to_json(compose_tokens(m_tokens));
            else if (m_op == "invert") j = to_json(inverse(compose_tokens(m_tokens)));
            else j = factor_json(compose_tokens(m_tokens));
            std::cout << j.dump() << "\n";
        } else if (*verify_cmd) {
            SuiteReport rep = run_suite(v_suite);
            for (const auto& c : rep.checks) {
                std::printf("%s  %-44s criterion %d  max_abs %.3e", c.pass ? "PASS" : "FAIL", c.check_id.c_str(),
                            c.criterion, c.max_abs);
                if (c.observed_order) std::printf("  order %.3f", *c.observed_order);
                std::printf("  tol %g\n", c.tolerance);
            }
            std::printf("%zu checks, %s\n", rep.checks.size(), rep.pass() ? "all passed" : "FAILURES");
            if (!v_report.empty()) {
                std::ofstream out(v_report);
                if (!out) throw UsageError("cannot write '" + v_report + "'");
                out << rep.to_json().dump(2) << "\n";
            }
            return rep.pass() ? kOk : kTolerance;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const GeometryMismatch& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const EquationMismatch& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumeric;
    }
    return kOk;
}
