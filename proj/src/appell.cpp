#include "canonica/appell.hpp"

#include <cmath>
#include <numbers>

#include "canonica/errors.hpp"
#include "canonica/quadrature.hpp"

namespace canonica {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I{0.0, 1.0};
using Fn = std::function<cplx(double, double)>;

bool near(double x, double y) { return std::fabs(x - y) <= 1e-14; }

struct Angle {
    double phi, c, s;
};

Angle angle_of(double a) {
    SympMat2 f = mat_fourier(a);  // exact at quarter turns
    return {a * kPi / 2.0, f.a.real(), f.b.real()};
}

// A^(-1/2) continued from the order-0 map; s fixes the side of the cut for A < 0.
cplx inv_sqrt(double A, double s) {
    if (A > 0.0) return 1.0 / std::sqrt(A);
    return (s > 0.0 ? -I : I) / std::sqrt(-A);
}

// Linear optical map; `dual` is the solution generated by the Fourier-transformed source.
Fn pwe_map(const Fn& v, const Fn& dual, double a) {
    Angle g = angle_of(a);
    const bool quarter = near(std::fabs(a), 1.0);
    return [v, dual, a, g, quarter](double x, double z) -> cplx {
        double A = g.c - z * g.s;
        if (std::fabs(A) <= 1e-14 * (1.0 + std::fabs(z))) {
            if (!dual) throw SingularEvol("Appell map is singular at this evolution value and no dual solution is known");
            return std::exp(I * g.phi / 2.0) / std::sqrt(I / g.s) * std::exp(I * g.c * g.s * x * x / 2.0) *
                   dual(g.s * x, 0.0);
        }
        if (quarter) {
            double sign = a > 0 ? -1.0 : 1.0;
            return 1.0 / std::sqrt(I * z) * std::exp(I * x * x / (2.0 * z)) * v(sign * x / z, -1.0 / z);
        }
        return std::exp(I * g.phi / 2.0) * inv_sqrt(A, g.s) * std::exp(-I * x * x * g.s / (2.0 * A)) *
               v(x / A, (g.s + z * g.c) / A);
    };
}

Fn radial_pwe_map(const Fn& v, const Fn& dual, double a, int m) {
    Angle g = angle_of(a);
    return [v, dual, g, m](double x, double z) -> cplx {
        double A = g.c - z * g.s;
        if (std::fabs(A) <= 1e-14 * (1.0 + std::fabs(z))) {
            if (!dual) throw SingularEvol("Appell map is singular at this evolution value and no dual solution is known");
            return std::exp(I * double(m + 1) * (g.phi - kPi / 2.0)) * g.s * std::exp(I * g.c * g.s * x * x / 2.0) *
                   dual(g.s * x, 0.0);
        }
        return std::exp(I * double(m + 1) * g.phi) / A * std::exp(-I * x * x * g.s / (2.0 * A)) *
               v(x / A, (g.s + z * g.c) / A);
    };
}

Fn heat_map(const Fn& v, double a) {
    Angle g = angle_of(a);
    return [v, g](double x, double t) -> cplx {
        double A = g.c + t * g.s;
        if (std::fabs(A) <= 1e-14 * (1.0 + std::fabs(t)))
            throw SingularEvol("caloric Appell map is singular at this evolution value");
        return inv_sqrt(A, g.s) * std::exp(-g.s * x * x / (2.0 * A)) * v(x / A, (t * g.c - g.s) / A);
    };
}

Fn radial_heat_map(const Fn& v, double a, double mu) {
    if (!(near(a, 1.0) || near(a, -1.0)))
        throw DomainError("radial caloric Appell map is defined for orders 0 and +-1 only");
    const cplx inv = a < 0 ? std::exp(I * kPi * mu / 2.0) : cplx(1.0);
    return [v, mu, inv](double r, double t) -> cplx {
        if (t == 0.0) throw SingularEvol("radial caloric Appell map is singular at t = 0");
        return inv * std::pow(cplx(t), -mu / 2.0) * std::exp(-r * r / (2.0 * t)) * v(r / t, -1.0 / t);
    };
}

}  // namespace

double AppellSpec::effective_alpha() const {
    double a = reduce_alpha(alpha);
    return direction == Direction::Inverse ? reduce_alpha(-a) : a;
}

void AppellSpec::validate() const {
    if (!(alpha > -2.0 && alpha <= 2.0)) throw DomainError("Appell order must lie in (-2, 2]");
    if (!std::isfinite(evol)) throw DomainError("Appell evolution value must be finite");
    if (equation.kind == EquationKind::RadialHeat && !(equation.mu > 1.0))
        throw DomainError("radial caloric Appell map needs mu > 1");
    if (equation.kind == EquationKind::RadialPWE && equation.m < 0) throw DomainError("negative azimuthal index");
}

nlohmann::json AppellSpec::to_json() const {
    nlohmann::json j;
    j["equation"] = to_string(equation.kind);
    if (equation.kind == EquationKind::RadialPWE) j["m"] = equation.m;
    if (equation.kind == EquationKind::RadialHeat) j["mu"] = equation.mu;
    j["alpha"] = alpha;
    j["evol"] = evol;
    j["direction"] = direction == Direction::Forward ? "Forward" : "Inverse";
    return j;
}

AppellSpec AppellSpec::from_json(const nlohmann::json& j) {
    AppellSpec s;
    try {
        std::string eq = j.at("equation").get<std::string>();
        if (eq == "pwe")
            s.equation = Equation::pwe();
        else if (eq == "radial-pwe")
            s.equation = Equation::radial_pwe(j.value("m", 0));
        else if (eq == "heat")
            s.equation = Equation::heat();
        else if (eq == "radial-heat")
            s.equation = Equation::radial_heat(j.value("mu", 3.0));
        else
            throw ParseError("unknown equation " + eq);
        s.alpha = j.value("alpha", 1.0);
        s.evol = j.value("evol", 0.0);
        std::string d = j.value("direction", std::string("Forward"));
        if (d != "Forward" && d != "Inverse") throw ParseError("direction must be Forward or Inverse");
        s.direction = d == "Forward" ? Direction::Forward : Direction::Inverse;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("Appell spec: ") + e.what());
    }
    s.validate();
    return s;
}

FieldExpr appell_analytic(const FieldExpr& src, const AppellSpec& spec) {
    spec.validate();
    if (!(src.equation == spec.equation))
        throw EquationMismatch("source solves " + src.equation.describe() + ", map is for " + spec.equation.describe());
    const double a = spec.effective_alpha();
    if (a == 0.0) return src;
    FieldExpr out;
    out.equation = src.equation;
    switch (spec.equation.kind) {
        case EquationKind::PWE: {
            Fn v = src.fn, d = src.dual;
            out.fn = pwe_map(v, d, a);
            if (d) {
                Fn vpar = [v](double x, double z) { return v(-x, z); };
                out.dual = pwe_map(d, vpar, a);
            }
            break;
        }
        case EquationKind::RadialPWE: {
            Fn v = src.fn, d = src.dual;
            out.fn = radial_pwe_map(v, d, a, spec.equation.m);
            if (d) out.dual = radial_pwe_map(d, v, a, spec.equation.m);
            break;
        }
        case EquationKind::Heat: out.fn = heat_map(src.fn, a); break;
        case EquationKind::RadialHeat: out.fn = radial_heat_map(src.fn, a, spec.equation.mu); break;
    }
    return out;
}

FieldExpr appell_analytic(const AnalyticField& src, const AppellSpec& spec) {
    return appell_analytic(to_expr(src), spec);
}

SampledField appell_numeric(const SampledField& source, const AppellSpec& spec, const Grid1D& out_grid,
                            const QuadratureConfig& cfg, std::optional<Grid1D> mid) {
    spec.validate();
    source.validate();
    const double a = spec.effective_alpha();
    const double z = spec.evol;
    const Grid1D mg = mid.value_or(source.grid);
    SampledField out;
    switch (spec.equation.kind) {
        case EquationKind::PWE: {
            if (z == 0.0) {
                out = apply(FrFT{a}, source, out_grid, cfg);
            } else {
                SampledField t = apply(FrFT{a}, source, mg, cfg);
                out = apply(FresnelProp{z}, t, out_grid, cfg);
            }
            break;
        }
        case EquationKind::RadialPWE: {
            int m = spec.equation.m;
            if (z == 0.0) {
                out = apply(FrHankel{m, a}, source, out_grid, cfg);
            } else {
                SampledField t = apply(FrHankel{m, a}, source, mg, cfg);
                out = apply(RadialCT{mat_free(z), 2.0, m}, t, out_grid, cfg);
            }
            break;
        }
        case EquationKind::Heat: {
            if (z < 0.0) throw DomainError("numeric caloric map needs evol >= 0");
            // kernel of the Laplace-type matrix itself, without the order-dependent phase
            const cplx unphase = std::exp(-I * a * kPi / 4.0);
            if (z == 0.0) {
                out = apply(FrLaplace{a}, source, out_grid, cfg);
                for (auto& v : out.values) v *= unphase;
            } else {
                SampledField t = apply(FrLaplace{a}, source, mg, cfg);
                for (auto& v : t.values) v *= unphase;
                out = poisson_propagate(t, z, out_grid, cfg);
            }
            break;
        }
        case EquationKind::RadialHeat: {
            if (z < 0.0) throw DomainError("numeric caloric map needs evol >= 0");
            const double mu = spec.equation.mu;
            const double nu = mu / 2.0 - 1.0;
            if (a == 0.0) {
                if (z > 0.0) {
                    out = radial_heat_propagate(source, z, mu, out_grid, cfg);
                } else {
                    Interpolator ip(source);
                    out = SampledField{out_grid, std::vector<cplx>(out_grid.count), source.geometry, 0.0, source.notes};
                    for (int i = 0; i < out_grid.count; ++i) out.values[i] = ip(out_grid.at(i));
                }
                break;
            }
            if (!(near(a, 1.0) || near(a, -1.0)))
                throw DomainError("radial caloric Appell map is defined for orders 0 and +-1 only");
            if (z == 0.0) {
                out = radial_laplace(source, 1, nu, -mu / 2.0, out_grid, cfg);
            } else {
                SampledField t = radial_laplace(source, 1, nu, -mu / 2.0, mg, cfg);
                out = radial_heat_propagate(t, z, mu, out_grid, cfg);
            }
            if (a < 0.0)
                for (auto& v : out.values) v *= std::exp(I * kPi * mu / 2.0);
            out.geometry = Geometry::radial_dim(mu, 0);
            break;
        }
    }
    out.evol = z;
    return out;
}

SympMat2 appell_matrix(const AppellSpec& spec) {
    spec.validate();
    return mat_appell(spec.equation.kind, spec.effective_alpha(), spec.evol);
}

SympMat2 numeric_path_matrix(const AppellSpec& spec) {
    spec.validate();
    const double a = spec.effective_alpha(), z = spec.evol;
    switch (spec.equation.kind) {
        case EquationKind::PWE:
        case EquationKind::RadialPWE: return compose(mat_free(z), mat_fourier(a), inverse(mat_free(z)));
        default: {
            SympMat2 p = z > 0.0 ? mat_poisson(z) : identity();
            return compose(p, mat_laplace(a), inverse(p));
        }
    }
}

cplx self_appell_eigenvalue(const SelfAppellMode& mode, double alpha) {
    if (mode.kind == SelfAppellMode::Kind::HG) return std::exp(-I * kPi * alpha * double(mode.n) / 2.0);
    return std::exp(-I * kPi * alpha * double(mode.n));
}

double self_appell_eigencheck(const SelfAppellMode& mode, double alpha, double zeta, const Grid1D& grid) {
    if (mode.n < 0 || mode.n > 8) throw DomainError("mode index must lie in [0, 8]");
    AnalyticField f = mode.kind == SelfAppellMode::Kind::HG ? AnalyticField::std_hg(mode.n)
                                                           : AnalyticField::std_lg(mode.n, mode.m);
    AppellSpec spec{f.equation(), alpha, zeta, Direction::Forward};
    FieldExpr w = appell_analytic(f, spec);
    cplx lam = self_appell_eigenvalue(mode, alpha);
    double dev = 0.0;
    for (int i = 0; i < grid.count; ++i) {
        double x = grid.at(i);
        dev = std::max(dev, std::abs(w(x, zeta) - lam * eval(f, x, zeta)));
    }
    return dev;
}

}  // namespace canonica
