#include "canonica/verify.hpp"

#include <cmath>
#include <numbers>

#include "canonica/appell.hpp"
#include "canonica/errors.hpp"
#include "canonica/quadrature.hpp"
#include "canonica/transforms.hpp"

namespace canonica {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I{0.0, 1.0};

Fn1 d1(const Fn1& f, double h) {
    return [f, h](double x) { return (f(x + h) - f(x - h)) / (2.0 * h); };
}

Fn1 d2(const Fn1& f, double h) {
    return [f, h](double x) { return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h); };
}

Fn1 mul(const Fn1& f, std::function<double(double)> g) {
    return [f, g](double x) { return g(x) * f(x); };
}

Fn1 lin(const Fn1& f, cplx a, const Fn1& g, cplx b) {
    return [=](double x) { return a * f(x) + b * g(x); };
}

}  // namespace

nlohmann::json ResidualReport::to_json() const {
    nlohmann::json j;
    j["max_abs"] = max_abs;
    j["l2"] = l2;
    j["grid_h"] = grid_h;
    j["evol_h"] = evol_h;
    j["observed_order"] = observed_order ? nlohmann::json(*observed_order) : nlohmann::json(nullptr);
    if (!note.empty()) j["note"] = note;
    return j;
}

ResidualReport pde_residual(const Equation& eq, const Fn2& u, const Window& w, double h, double k) {
    if (!(h > 0.0) || !(k > 0.0)) throw DomainError("residual steps must be positive");
    if (w.nx < 1 || w.nt < 1) throw DomainError("residual window needs at least one point");
    ResidualReport rep;
    rep.grid_h = h;
    rep.evol_h = k;
    if (eq.is_radial()) {
        if (w.x0 < 2.0 * h) throw DomainError("radial residual window must start at r >= 2h");
        rep.note = "near-axis strip r < " + std::to_string(w.x0) + " omitted";
    }
    double sum = 0.0;
    int count = 0;
    for (int j = 0; j < w.nt; ++j) {
        double t = w.nt == 1 ? w.t0 : w.t0 + (w.t1 - w.t0) * j / (w.nt - 1);
        for (int i = 0; i < w.nx; ++i) {
            double x = w.nx == 1 ? w.x0 : w.x0 + (w.x1 - w.x0) * i / (w.nx - 1);
            cplx r;
            try {
                cplx u0 = u(x, t);
                cplx uxx = (u(x + h, t) - 2.0 * u0 + u(x - h, t)) / (h * h);
                cplx ux = (u(x + h, t) - u(x - h, t)) / (2.0 * h);
                cplx ut = (u(x, t + k) - u(x, t - k)) / (2.0 * k);
                switch (eq.kind) {
                    case EquationKind::PWE: r = 2.0 * I * ut + uxx; break;
                    case EquationKind::RadialPWE:
                        r = 2.0 * I * ut + uxx + ux / x - double(eq.m * eq.m) * u0 / (x * x);
                        break;
                    case EquationKind::Heat: r = 2.0 * ut - uxx; break;
                    case EquationKind::RadialHeat: r = 2.0 * ut - uxx - (eq.mu - 1.0) / x * ux; break;
                }
            } catch (const DomainError& e) {
                throw DomainError(std::string("residual window overlaps a singularity: ") + e.what());
            }
            rep.max_abs = std::max(rep.max_abs, std::abs(r));
            sum += std::norm(r);
            ++count;
        }
    }
    rep.l2 = std::sqrt(sum / count);
    return rep;
}

ResidualReport pde_residual(const AnalyticField& f, const Window& w, double h, double k) {
    return pde_residual(f.equation(), [f](double x, double t) { return eval(f, x, t); }, w, h, k);
}

double observed_order(const std::vector<double>& hs, const std::vector<double>& errs) {
    if (hs.size() != errs.size() || hs.size() < 2) throw DomainError("observed order needs matching sequences");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) {
        double x = std::log(hs[i]), y = std::log(std::max(errs[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ResidualReport pde_residual_order(const Equation& eq, const Fn2& u, const Window& w, const std::vector<double>& hs) {
    std::vector<double> errs;
    ResidualReport last;
    for (double h : hs) {
        last = pde_residual(eq, u, w, h, h);
        errs.push_back(last.max_abs);
    }
    if (hs.size() >= 3) last.observed_order = observed_order(hs, errs);
    return last;
}

const char* pair_name(CommutatorPair p) {
    switch (p) {
        case CommutatorPair::X_P: return "X_P";
        case CommutatorPair::Kp_Km: return "Kp_Km";
        case CommutatorPair::Kpm_K3: return "Kpm_K3";
        case CommutatorPair::Radial_Kp_Km: return "radial_Kp_Km";
        case CommutatorPair::Radial_Kpm_K3: return "radial_Kpm_K3";
        case CommutatorPair::Type1_Kp_Km: return "type1_Kp_Km";
        case CommutatorPair::Type1_Kpm_K3: return "type1_Kpm_K3";
    }
    return "?";
}

Fn1 bessel_operator(const Fn1& f, double nu, double nu_prime, double h, bool adjoint) {
    const double c1 = adjoint ? -(1.0 + 2.0 * nu_prime) : (1.0 + 2.0 * nu_prime);
    const double c0 = adjoint ? (nu_prime + 1.0) * (nu_prime + 1.0) - nu * nu : nu_prime * nu_prime - nu * nu;
    Fn1 f2 = d2(f, h), f1 = d1(f, h);
    return [=](double x) { return f2(x) + c1 / x * f1(x) + c0 / (x * x) * f(x); };
}

namespace {

struct Generators {
    std::function<Fn1(const Fn1&)> kp, km, k3;
};

Generators generators(CommutatorPair pair, double h, const CommutatorParams& p) {
    Generators g;
    g.kp = [](const Fn1& f) { return mul(f, [](double x) { return x * x / 2.0; }); };
    switch (pair) {
        case CommutatorPair::Kp_Km:
        case CommutatorPair::Kpm_K3:
            g.km = [h](const Fn1& f) { return lin(d2(f, h), -0.5, f, 0.0); };
            g.k3 = [h](const Fn1& f) {
                Fn1 df = d1(f, h);
                return Fn1([=](double x) { return -0.5 * I * (x * df(x) + 0.5 * f(x)); });
            };
            break;
        case CommutatorPair::Radial_Kp_Km:
        case CommutatorPair::Radial_Kpm_K3: {
            const double m2 = double(p.m * p.m);
            g.km = [h, m2](const Fn1& f) {
                Fn1 f2 = d2(f, h), f1 = d1(f, h);
                return Fn1([=](double x) { return -0.5 * (f2(x) + f1(x) / x - m2 / (x * x) * f(x)); });
            };
            g.k3 = [h](const Fn1& f) {
                Fn1 df = d1(f, h);
                return Fn1([=](double x) { return -0.5 * I * (x * df(x) + f(x)); });
            };
            break;
        }
        default: {
            const double nu = p.nu, nup = p.nu_prime;
            g.km = [h, nu, nup](const Fn1& f) { return lin(bessel_operator(f, nu, nup, h, true), -0.5, f, 0.0); };
            g.k3 = [h, nup](const Fn1& f) {
                Fn1 df = d1(f, h);
                return Fn1([=](double x) { return -0.5 * I * (x * df(x) - nup * f(x)); });
            };
            break;
        }
    }
    return g;
}

double max_dev(const Fn1& a, const Fn1& b, const std::vector<double>& pts) {
    double m = 0.0;
    for (double x : pts) m = std::max(m, std::abs(a(x) - b(x)));
    return m;
}

Fn1 commutator(const std::function<Fn1(const Fn1&)>& A, const std::function<Fn1(const Fn1&)>& B, const Fn1& f) {
    Fn1 ab = A(B(f)), ba = B(A(f));
    return [ab, ba](double x) { return ab(x) - ba(x); };
}

}  // namespace

double commutator_check(CommutatorPair pair, const Fn1& f, const std::vector<double>& points, double h,
                        const CommutatorParams& params) {
    if (pair == CommutatorPair::X_P) {
        auto X = [](const Fn1& g) { return mul(g, [](double x) { return x; }); };
        auto P = [h](const Fn1& g) { return lin(d1(g, h), -I, g, 0.0); };
        Fn1 c = commutator(X, P, f);
        return max_dev(c, lin(f, I, f, 0.0), points);
    }
    Generators g = generators(pair, h, params);
    switch (pair) {
        case CommutatorPair::Kp_Km:
        case CommutatorPair::Radial_Kp_Km:
        case CommutatorPair::Type1_Kp_Km:
            return max_dev(commutator(g.kp, g.km, f), lin(g.k3(f), 2.0 * I, f, 0.0), points);
        default: {
            double a = max_dev(commutator(g.kp, g.k3, f), lin(g.kp(f), I, f, 0.0), points);
            double b = max_dev(commutator(g.km, g.k3, f), lin(g.km(f), -I, f, 0.0), points);
            return std::max(a, b);
        }
    }
}

double commutator_check(CommutatorPair pair, const SampledField& f, const std::vector<double>& points, double h,
                        const CommutatorParams& params) {
    auto keep = std::make_shared<SampledField>(f);
    auto ip = std::make_shared<Interpolator>(*keep);
    Fn1 fn = [ip, keep](double x) { return (*ip)(x); };
    return commutator_check(pair, fn, points, h, params);
}

double eigen_operator_check(int kind, double nu, double nu_prime, const Fn1& f, const Grid1D& sample_grid,
                            const Grid1D& out_grid, double h) {
    if (kind != 1 && kind != 2) throw DomainError("transform kind must be 1 or 2");
    Fn1 bf = bessel_operator(f, nu, nu_prime, h, kind == 1);
    Geometry geo = Geometry::radial_type(nu, nu_prime);
    SampledField sf{sample_grid, {}, geo, 0.0, {}}, sb{sample_grid, {}, geo, 0.0, {}};
    for (int i = 0; i < sample_grid.count; ++i) {
        double x = sample_grid.at(i);
        sf.values.push_back(f(x));
        sb.values.push_back(x > 0.0 ? bf(x) : cplx(0.0));
    }
    SampledField hf = hankel_type(sf, kind, nu, nu_prime, out_grid);
    SampledField hb = hankel_type(sb, kind, nu, nu_prime, out_grid);
    double dev = 0.0;
    for (int i = 0; i < out_grid.count; ++i) {
        double y = out_grid.at(i);
        dev = std::max(dev, std::abs(hb.values[i] + y * y * hf.values[i]));
    }
    return dev;
}

const char* pair_name(AppellPair p) {
    switch (p) {
        case AppellPair::ChirpPoint: return "ChirpPoint";
        case AppellPair::AiryKMBB: return "AiryKMBB";
        case AppellPair::BesselBG: return "BesselBG";
        case AppellPair::HeatVW: return "HeatVW";
        case AppellPair::RadialRR: return "RadialRR";
    }
    return "?";
}

double appell_pair_check(AppellPair pair, double evol, const Grid1D& grid, const PairParams& p) {
    AnalyticField left, right;
    double factor = 1.0;
    switch (pair) {
        case AppellPair::ChirpPoint:
            left = AnalyticField::plane_chirp(p.lambda);
            right = AnalyticField::point_src(p.lambda);
            break;
        case AppellPair::AiryKMBB:
            left = AnalyticField::airy_km(p.lambda);
            right = AnalyticField::airy_bb(p.lambda);
            break;
        case AppellPair::BesselBG:
            left = AnalyticField::bessel(p.lambda, p.m);
            right = AnalyticField::bessel_gauss(p.lambda, p.m);
            break;
        case AppellPair::HeatVW:
            left = AnalyticField::heat_poly(p.n);
            right = AnalyticField::heat_assoc(p.n);
            factor = 1.0 / std::sqrt(2.0 * kPi);
            break;
        case AppellPair::RadialRR:
            left = AnalyticField::radial_heat_poly(p.n, p.mu);
            right = AnalyticField::radial_heat_appell(p.n, p.mu);
            factor = std::pow(2.0 * kPi, -p.mu / 2.0);
            break;
    }
    AppellSpec spec{left.equation(), 1.0, evol, Direction::Forward};
    FieldExpr w = appell_analytic(left, spec);
    double dev = 0.0;
    for (int i = 0; i < grid.count; ++i) {
        double x = grid.at(i);
        dev = std::max(dev, std::abs(factor * w(x, evol) - eval(right, x, evol)));
    }
    return dev;
}

SympMat2 expm(const SympMat2& g) {
    double norm = std::max({std::abs(g.a), std::abs(g.b), std::abs(g.c), std::abs(g.d)});
    int s = 0;
    while (norm > 0.25) {
        norm /= 2.0;
        ++s;
    }
    const double sc = std::ldexp(1.0, -s);
    SympMat2 x{g.a * sc, g.b * sc, g.c * sc, g.d * sc};
    SympMat2 term = identity(), sum = identity();
    for (int k = 1; k <= 30; ++k) {
        term = term * x;
        term = SympMat2{term.a / double(k), term.b / double(k), term.c / double(k), term.d / double(k)};
        sum = SympMat2{sum.a + term.a, sum.b + term.b, sum.c + term.c, sum.d + term.d};
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

double duality_matrix_check() {
    const SympMat2 F = mat_fourier(1.0), Fi = inverse(F);
    const SympMat2 gm{0.0, 1.0, 0.0, 0.0}, gp{0.0, 0.0, -1.0, 0.0}, g3{0.5, 0.0, 0.0, -0.5};
    const SympMat2 mg3{-0.5, 0.0, 0.0, 0.5};
    double dev = 0.0;
    dev = std::max(dev, max_abs_diff(F * gm * Fi, gp));
    dev = std::max(dev, max_abs_diff(F * gp * Fi, gm));
    dev = std::max(dev, max_abs_diff(F * g3 * Fi, mg3));
    for (double tau : {0.3, 1.0, 2.5}) {
        dev = std::max(dev, max_abs_diff(mat_poisson(tau), Fi * mat_gauss_aperture(tau) * F));
        dev = std::max(dev, max_abs_diff(mat_gauss_aperture(tau), Fi * mat_poisson(tau) * F));
    }
    return dev;
}

double disentanglement_check(double beta) {
    if (!(std::fabs(beta) < kPi)) throw DomainError("disentanglement needs |beta| < pi");
    const double a = std::tan(beta / 2.0), b = std::sin(beta);
    auto T = [](cplx z) { return SympMat2{1.0, z, 0.0, 1.0}; };
    auto L = [](cplx p) { return SympMat2{1.0, 0.0, -p, 1.0}; };
    // elliptic: exp(beta (g- + g+))
    SympMat2 rot = expm(SympMat2{0.0, beta, -beta, 0.0});
    double dev = std::max(max_abs_diff(rot, T(a) * L(b) * T(a)), max_abs_diff(rot, L(a) * T(b) * L(a)));
    // hyperbolic: exp(i beta (g- - g+))
    SympMat2 hyp = expm(SympMat2{0.0, I * beta, I * beta, 0.0});
    dev = std::max(dev, max_abs_diff(hyp, T(I * a) * L(-I * b) * T(I * a)));
    dev = std::max(dev, max_abs_diff(hyp, L(-I * a) * T(I * b) * L(-I * a)));
    return dev;
}

double generating_function_check(double chi_max, double x_max, double t, int nmax) {
    double dev = 0.0;
    for (int ic = 0; ic <= 20; ++ic) {
        double chi = -chi_max + 2.0 * chi_max * ic / 20.0;
        for (int ix = 0; ix <= 20; ++ix) {
            double x = -x_max + 2.0 * x_max * ix / 20.0;
            cplx sum = 0.0;
            double c = 1.0;
            for (int n = 0; n <= nmax; ++n) {
                if (n > 0) c *= chi / n;
                sum += c * eval(AnalyticField::heat_poly(n), x, t);
            }
            dev = std::max(dev, std::abs(sum - std::exp(chi * x + chi * chi * t / 2.0)));
        }
    }
    return dev;
}

}  // namespace canonica
