#include "canonica/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "canonica/appell.hpp"
#include "canonica/errors.hpp"
#include "canonica/fields.hpp"
#include "canonica/symplectic.hpp"
#include "canonica/transforms.hpp"
#include "canonica/verify.hpp"

namespace canonica {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I{0.0, 1.0};

using json = nlohmann::json;

CheckResult make(std::string id, int criterion, json params, double max_abs, double tol) {
    CheckResult r;
    r.check_id = std::move(id);
    r.criterion = criterion;
    r.params = std::move(params);
    r.max_abs = max_abs;
    r.tolerance = tol;
    r.pass = std::isfinite(max_abs) && max_abs <= tol;
    return r;
}

Grid1D full(double a, double b, int n) { return Grid1D::from_range(GridKind::FullLine, a, b, n); }
Grid1D half(double a, double b, int n) { return Grid1D::from_range(GridKind::HalfLine, a, b, n); }

double max_dev(const std::function<cplx(double)>& a, const std::function<cplx(double)>& b, const Grid1D& g) {
    double d = 0.0;
    for (int i = 0; i < g.count; ++i) d = std::max(d, std::abs(a(g.at(i)) - b(g.at(i))));
    return d;
}

double trapezoid(const Grid1D& g, const std::function<cplx(int)>& f) {
    cplx s = 0.0;
    for (int i = 0; i < g.count; ++i) s += (i == 0 || i == g.count - 1 ? 0.5 : 1.0) * f(i);
    return std::abs(s) * g.step;
}

cplx trapezoid_c(const Grid1D& g, const std::function<cplx(int)>& f) {
    cplx s = 0.0;
    for (int i = 0; i < g.count; ++i) s += (i == 0 || i == g.count - 1 ? 0.5 : 1.0) * f(i);
    return s * g.step;
}

// ---- criterion 1 --------------------------------------------------------

std::vector<CheckResult> matrix_checks() {
    std::vector<CheckResult> out;
    {
        std::mt19937_64 rng(20240607);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::uniform_int_distribution<int> pick(0, 8), len(1, 6);
        double dev = 0.0;
        for (int trial = 0; trial < 10000; ++trial) {
            SympMat2 m = identity();
            int n = len(rng);
            for (int k = 0; k < n; ++k) {
                double p = u(rng), q = u(rng);
                SympMat2 f;
                switch (pick(rng)) {
                    case 0: f = mat_free(2.0 * p); break;
                    case 1: f = mat_lens(2.0 * p); break;
                    case 2: f = mat_scale(std::exp(cplx(p, q))); break;
                    case 3: f = mat_fourier(2.0 * p); break;
                    case 4: f = mat_laplace(2.0 * p); break;
                    case 5: f = mat_poisson(std::fabs(p) + 0.1); break;
                    case 6: f = mat_gauss_aperture(std::fabs(p) + 0.1); break;
                    case 7: f = mat_bargmann(); break;
                    default: f = mat_lower(I * p); break;
                }
                m = compose(m, f);
            }
            dev = std::max(dev, std::abs(m.det() - 1.0));
        }
        out.push_back(make("matrix.det_random_compositions", 1, {{"trials", 10000}, {"max_length", 6}}, dev, 1e-14));
    }
    {
        double dev = 0.0;
        for (double a : {0.3, 1.0, 1.7, -0.6})
            for (double z : {0.5, 0.7, 1.3}) {
                double c = std::cos(a * kPi / 2), s = std::sin(a * kPi / 2);
                SympMat2 closed{c - z * s, (1.0 + z * z) * s, -s, c + z * s};
                dev = std::max(dev, max_abs_diff(mat_appell(EquationKind::PWE, a, z), closed));
                dev = std::max(dev, max_abs_diff(compose(mat_free(z), mat_fourier(a), mat_free(-z)), closed));
            }
        out.push_back(make("matrix.appell_closed_form", 1, {{"alpha", {0.3, 1.0, 1.7, -0.6}}, {"evol", {0.5, 0.7, 1.3}}},
                           dev, 1e-14));
    }
    {
        SympMat2 S = mat_scale(std::exp(I * kPi / 4.0));
        double dev = 0.0;
        for (double a : {0.3, 1.0, 1.7, -0.6})
            dev = std::max(dev, max_abs_diff(mat_laplace(a), S * mat_fourier(a) * inverse(S)));
        out.push_back(make("matrix.laplace_similarity", 1, {{"alpha", {0.3, 1.0, 1.7, -0.6}}}, dev, 1e-15));
    }
    {
        double dev = 0.0;
        for (double b : {0.3, -0.3, 1.2, -1.2}) dev = std::max(dev, disentanglement_check(b));
        out.push_back(make("matrix.disentanglement", 1, {{"beta", {0.3, -0.3, 1.2, -1.2}}}, dev, 1e-12));
    }
    {
        double dev = 0.0;
        for (double a : {0.2, 0.7, 1.5})
            for (double b : {0.4, 1.1}) {
                dev = std::max(dev, max_abs_diff(mat_poisson(a) * mat_poisson(b), mat_poisson(a + b)));
                dev = std::max(dev, max_abs_diff(mat_gauss_aperture(a) * mat_gauss_aperture(b),
                                                 mat_gauss_aperture(a + b)));
            }
        out.push_back(make("matrix.semigroups", 1, json::object(), dev, 1e-14));
        out.push_back(make("matrix.fourier_duality", 1, json::object(), duality_matrix_check(), 1e-14));
    }
    return out;
}

// ---- criterion 2 --------------------------------------------------------

std::vector<CheckResult> pair_checks() {
    std::vector<CheckResult> out;
    const std::vector<double> evols{0.5, 0.7, 1.3};
    auto run = [&](AppellPair p, const PairParams& pp, const Grid1D& g) {
        double d = 0.0;
        for (double e : evols) d = std::max(d, appell_pair_check(p, e, g, pp));
        return d;
    };
    {
        PairParams pp;
        pp.lambda = 2.0;
        out.push_back(make("pairs.chirp_point", 2, {{"lambda", 2.0}, {"window", {-4, 4}}, {"evol", evols}},
                           run(AppellPair::ChirpPoint, pp, full(-4, 4, 256)), 1e-12));
    }
    {
        double d = 0.0;
        for (int n = 0; n <= 6; ++n) {
            PairParams pp;
            pp.n = n;
            d = std::max(d, run(AppellPair::HeatVW, pp, full(-3, 3, 256)));
        }
        out.push_back(make("pairs.heat_vw", 2, {{"n_max", 6}, {"window", {-3, 3}}, {"evol", evols}}, d, 1e-10));
    }
    {
        double d = 0.0;
        for (int n = 0; n <= 4; ++n) {
            PairParams pp;
            pp.n = n;
            pp.mu = 3.0;
            d = std::max(d, run(AppellPair::RadialRR, pp, half(0, 3, 256)));
        }
        out.push_back(make("pairs.radial_rr", 2, {{"mu", 3.0}, {"n_max", 4}, {"window", {0, 3}}, {"evol", evols}}, d,
                           1e-9));
    }
    {
        PairParams pp;
        pp.lambda = 1.0;
        out.push_back(make("pairs.airy_km_bb", 2, {{"lambda", 1.0}, {"window", {-5, 5}}, {"evol", evols}},
                           run(AppellPair::AiryKMBB, pp, full(-5, 5, 256)), 1e-9));
    }
    {
        double d = 0.0;
        for (int m = 0; m <= 3; ++m) {
            PairParams pp;
            pp.lambda = 1.5;
            pp.m = m;
            d = std::max(d, run(AppellPair::BesselBG, pp, half(0, 5, 256)));
        }
        out.push_back(make("pairs.bessel_bg", 2, {{"lambda", 1.5}, {"m_max", 3}, {"window", {0, 5}}, {"evol", evols}},
                           d, 1e-9));
    }
    return out;
}

// ---- criterion 3 --------------------------------------------------------

FieldExpr shifted_fund_heat(double t0) {
    return FieldExpr{Equation::heat(),
                     [t0](double x, double t) {
                         return std::exp(-x * x / (2.0 * (t + t0))) / std::sqrt(cplx(2.0 * kPi * (t + t0)));
                     },
                     {}};
}

double group_dev(const FieldExpr& src, const std::vector<double>& evols, const Grid1D& g) {
    const Equation eq = src.equation;
    FieldExpr step = appell_analytic(appell_analytic(src, {eq, 0.4, 0.0, Direction::Forward}),
                                     {eq, 0.3, 0.0, Direction::Forward});
    FieldExpr direct = appell_analytic(src, {eq, 0.7, 0.0, Direction::Forward});
    double d = 0.0;
    for (double e : evols)
        d = std::max(d, max_dev([&](double x) { return step(x, e); }, [&](double x) { return direct(x, e); }, g));
    return d;
}

std::vector<CheckResult> group_checks() {
    std::vector<CheckResult> out;
    const std::vector<double> pwe_evols{0.2, 0.8, 1.1};
    {
        double d = std::max(group_dev(to_expr(AnalyticField::gauss(1.0, 0.3)), pwe_evols, full(-4, 4, 256)),
                            group_dev(to_expr(AnalyticField::airy_bb(1.0)), pwe_evols, full(-4, 4, 256)));
        out.push_back(make("group.pwe", 3, {{"alpha", {0.3, 0.4}}, {"families", {"gauss", "airy-bb"}}, {"evol", pwe_evols}},
                           d, 1e-10));
    }
    {
        const std::vector<double> ev{0.3, 0.7, 1.3};
        double d = std::max(group_dev(to_expr(AnalyticField::heat_poly(3)), ev, full(-2, 2, 256)),
                            group_dev(shifted_fund_heat(2.5), ev, full(-2, 2, 256)));
        out.push_back(make("group.heat", 3, {{"alpha", {0.3, 0.4}}, {"families", {"heat-poly", "fund-heat"}}, {"evol", ev}},
                           d, 1e-10));
    }
    {
        double d = 0.0;
        for (int m = 0; m <= 3; ++m)
            for (const auto& f : {AnalyticField::bessel_gauss(1.5, m), AnalyticField::bessel(1.5, m)}) {
                AppellSpec sp{Equation::radial_pwe(m), 1.0, 0.0, Direction::Forward};
                FieldExpr e = to_expr(f);
                FieldExpr twice = appell_analytic(appell_analytic(e, sp), sp);
                for (double z : {0.5, 0.7, 1.3})
                    d = std::max(d, max_dev([&](double r) { return twice(r, z); }, [&](double r) { return e(r, z); },
                                            half(0, 5, 256)));
            }
        out.push_back(make("group.radial_involution", 3, {{"m_max", 3}, {"families", {"bessel-gauss", "bessel"}}}, d,
                           1e-10));
    }
    return out;
}

// ---- criterion 4 --------------------------------------------------------

std::vector<CheckResult> eigen_checks() {
    std::vector<CheckResult> out;
    const std::vector<double> alphas{0.5, 1.0, 1.7}, zetas{0.0, 0.5, 2.0};
    double hg = 0.0, lg = 0.0;
    for (double a : alphas)
        for (double z : zetas) {
            for (int n = 0; n <= 8; ++n)
                hg = std::max(hg, self_appell_eigencheck({SelfAppellMode::Kind::HG, n, 0}, a, z, full(-6, 6, 256)));
            for (int n = 0; n <= 6; ++n)
                for (int m = 0; m <= 2; ++m)
                    lg = std::max(lg, self_appell_eigencheck({SelfAppellMode::Kind::LG, n, m}, a, z, half(0, 6, 256)));
        }
    out.push_back(make("eigen.hermite_gauss", 4, {{"n_max", 8}, {"alpha", alphas}, {"evol", zetas}}, hg, 1e-8));
    out.push_back(make("eigen.laguerre_gauss", 4, {{"n_max", 6}, {"m_max", 2}, {"alpha", alphas}, {"evol", zetas}}, lg,
                       1e-8));
    return out;
}

// ---- criterion 5 --------------------------------------------------------

std::vector<CheckResult> residual_checks() {
    struct Case {
        std::string id;
        FieldExpr f;
        Window w;
    };
    auto map = [](const FieldExpr& src, double alpha) {
        return appell_analytic(src, {src.equation, alpha, 0.0, Direction::Forward});
    };
    std::vector<Case> cases;
    cases.push_back({"residual.point_src", map(to_expr(AnalyticField::plane_chirp(2.0)), 1.0), {-2, 2, 0.5, 1.3}});
    cases.push_back({"residual.airy_bb", map(to_expr(AnalyticField::airy_km(1.0)), 1.0), {-3, 3, 0.5, 1.3}});
    cases.push_back({"residual.bessel_gauss", map(to_expr(AnalyticField::bessel(1.5, 1)), 1.0), {0.5, 3, 0.5, 1.3}});
    cases.push_back({"residual.gauss_fractional", map(to_expr(AnalyticField::gauss(1.0, 0.3)), 0.5), {-3, 3, 0.2, 0.6}});
    cases.push_back({"residual.hermite_gauss", map(to_expr(AnalyticField::std_hg(3)), 0.5), {-3, 3, 0.2, 0.6}});
    cases.push_back({"residual.laguerre_gauss", map(to_expr(AnalyticField::std_lg(2, 1)), 0.5), {0.5, 3, 0.2, 0.6}});
    cases.push_back({"residual.heat_assoc", map(to_expr(AnalyticField::heat_poly(3)), 1.0), {-2, 2, 0.5, 1.3}});
    cases.push_back({"residual.heat_fractional", map(to_expr(AnalyticField::heat_poly(4)), 0.5), {-2, 2, 0.5, 1.3}});
    cases.push_back(
        {"residual.radial_heat_appell", map(to_expr(AnalyticField::radial_heat_poly(2, 3.0)), 1.0), {0.5, 2, 0.5, 1.3}});
    const std::vector<double> hs{1e-2, 5e-3, 2.5e-3};
    std::vector<CheckResult> out;
    for (const auto& c : cases) {
        ResidualReport r = pde_residual_order(c.f.equation, c.f.fn, c.w, hs);
        CheckResult cr = make(c.id, 5,
                              {{"equation", c.f.equation.describe()},
                               {"window", {c.w.x0, c.w.x1, c.w.t0, c.w.t1}},
                               {"h", hs}},
                              r.max_abs, 0.0);
        cr.l2 = r.l2;
        cr.observed_order = r.observed_order;
        cr.tolerance = 1.8;
        cr.pass = r.observed_order && *r.observed_order >= 1.8;
        out.push_back(cr);
    }
    return out;
}

// ---- criterion 6 --------------------------------------------------------

std::vector<CheckResult> numeric_checks() {
    std::vector<CheckResult> out;
    QuadratureConfig cfg;
    cfg.scheme = Scheme::ChirpFFT;
    {
        Grid1D g = full(-15, 15, 4096);
        AnalyticField f = AnalyticField::gauss(1.0, 0.3);
        AppellSpec sp{Equation::pwe(), 1.0, 0.7, Direction::Forward};
        SampledField num = appell_numeric(sample(f, g, 0.0), sp, g, cfg);
        SampledField ref = sample(appell_analytic(f, sp), g, 0.7);
        out.push_back(make("numeric.gauss", 6, {{"N", 4096}, {"evol", 0.7}, {"scheme", "chirp-fft"}},
                           rel_l2(num.values, ref.values), 1e-5));
    }
    {
        Grid1D sg = full(-48, 25, 4096), mg = full(-10, 10, 4096), og = full(-20, 20, 4096);
        AnalyticField f = AnalyticField::airy_bb(0.0, 0.5);
        AppellSpec sp{Equation::pwe(), 1.0, 0.7, Direction::Forward};
        SampledField num = appell_numeric(sample(f, sg, 0.0), sp, og, cfg, mg);
        SampledField ref = sample(appell_analytic(f, sp), og, 0.7);
        out.push_back(make("numeric.apodized_airy", 6, {{"N", 4096}, {"evol", 0.7}, {"apod", 0.5}, {"scheme", "chirp-fft"}},
                           rel_l2(num.values, ref.values), 1e-5));
    }
    return out;
}

// ---- criterion 7 --------------------------------------------------------

SampledField fill(const Grid1D& g, const Geometry& geo, const std::function<cplx(double)>& f) {
    SampledField s{g, {}, geo, 0.0, {}};
    for (int i = 0; i < g.count; ++i) s.values.push_back(f(g.at(i)));
    return s;
}

std::vector<CheckResult> transform_checks() {
    std::vector<CheckResult> out;
    {
        Grid1D g = full(-10, 10, 512);
        SampledField s = fill(g, Geometry::linear(), [](double x) { return std::exp(-x * x / 2.0); });
        SampledField r = apply(FrFT{0.6}, s, g);
        out.push_back(make("transforms.frft_eigen_gaussian", 7, {{"alpha", 0.6}, {"N", 512}}, rel_l2(r.values, s.values),
                           1e-6));
    }
    {
        Grid1D g = full(-14, 14, 1024);
        SampledField s =
            fill(g, Geometry::linear(), [](double x) { return (1.0 + x) * std::exp(-(x - 1.0) * (x - 1.0) / 2.0); });
        SampledField two = apply(FrFT{0.3}, apply(FrFT{0.4}, s, g), g);
        SampledField one = apply(FrFT{0.7}, s, g);
        out.push_back(make("transforms.frft_group", 7, {{"alpha", {0.3, 0.4}}, {"N", 1024}}, rel_l2(two.values, one.values),
                           1e-5));
    }
    {
        Grid1D g = half(0, 10, 400);
        double d = 0.0;
        for (int m = 0; m <= 3; ++m) {
            SampledField s = fill(g, Geometry::radial(m),
                                  [m](double r) { return std::pow(r, m) * (1.0 + r * r) * std::exp(-r * r / 2.0); });
            SampledField back = apply(Hankel{m}, apply(Hankel{m}, s, g), g);
            d = std::max(d, rel_l2(back.values, s.values));
        }
        out.push_back(make("transforms.hankel_self_reciprocity", 7, {{"m_max", 3}, {"N", 400}}, d, 1e-6));
    }
    {
        const double nu = 1.5, nup = -0.25;
        const double p1 = 1.0 + nup + nu, p2 = nu - nup;
        Grid1D g = half(0, 10, 400);
        Geometry geo = Geometry::radial_type(nu, nup);
        std::vector<std::function<double(double)>> shapes{
            [](double x) { return std::exp(-x * x / 2.0); },
            [](double x) { return (1.0 + x * x) * std::exp(-x * x / 2.0); },
            [](double x) { return std::exp(-(x - 1.0) * (x - 1.0)); }};
        double self = 0.0;
        for (int kind : {1, 2}) {
            double p = kind == 1 ? p1 : p2;
            SampledField s = fill(g, geo, [&](double x) { return std::pow(x, p + 2.0) * std::exp(-x * x / 2.0); });
            SampledField back = hankel_type(hankel_type(s, kind, nu, nup, g), kind, nu, nup, g);
            self = std::max(self, rel_l2(back.values, s.values));
        }
        out.push_back(make("transforms.hankel_type_self_reciprocity", 7, {{"nu", nu}, {"nu_prime", nup}, {"N", 400}}, self,
                           1e-5));
        double par1 = 0.0, par2 = 0.0, mixed = 0.0;
        for (const auto& sh : shapes) {
            SampledField f = fill(g, geo, [&](double x) { return std::pow(x, p1) * sh(x); });
            SampledField gg = fill(g, geo, [&](double x) { return std::pow(x, p2) * sh(x); });
            SampledField F = hankel_type(f, 1, nu, nup, g), G = hankel_type(gg, 2, nu, nup, g);
            auto w1 = [&](int i) { return g.at(i) > 0 ? std::pow(g.at(i), -1.0 - 2.0 * nup) : 0.0; };
            auto w2 = [&](int i) { return g.at(i) > 0 ? std::pow(g.at(i), 1.0 + 2.0 * nup) : 0.0; };
            double a = trapezoid(g, [&](int i) { return std::norm(f.values[i]) * w1(i); });
            double b = trapezoid(g, [&](int i) { return std::norm(F.values[i]) * w1(i); });
            par1 = std::max(par1, std::fabs(a - b) / a);
            a = trapezoid(g, [&](int i) { return std::norm(gg.values[i]) * w2(i); });
            b = trapezoid(g, [&](int i) { return std::norm(G.values[i]) * w2(i); });
            par2 = std::max(par2, std::fabs(a - b) / a);
            cplx ca = trapezoid_c(g, [&](int i) { return std::conj(f.values[i]) * gg.values[i]; });
            cplx cb = trapezoid_c(g, [&](int i) { return std::conj(F.values[i]) * G.values[i]; });
            mixed = std::max(mixed, std::abs(ca - cb) / std::abs(ca));
        }
        json pp{{"nu", nu}, {"nu_prime", nup}, {"functions", 3}};
        out.push_back(make("transforms.hankel_type_parseval_1", 7, pp, par1, 1e-5));
        out.push_back(make("transforms.hankel_type_parseval_2", 7, pp, par2, 1e-5));
        out.push_back(make("transforms.hankel_type_parseval_mixed", 7, pp, mixed, 1e-5));
    }
    {
        Grid1D g = full(-2, 2, 64);
        const double t = 0.5;
        double d = 0.0;
        for (int n = 0; n <= 6; ++n) {
            SampledField r = poisson_propagate([n](double x) { return cplx(std::pow(x, n)); }, t, g);
            AnalyticField v = AnalyticField::heat_poly(n);
            for (int i = 0; i < g.count; ++i) d = std::max(d, std::abs(r.values[i] - eval(v, g.at(i), t)));
        }
        out.push_back(make("transforms.poisson_heat_poly", 7, {{"n_max", 6}, {"t", t}, {"nodes", 32}}, d, 1e-10));
    }
    {
        const double t = 0.5, mu = 3.0;
        Grid1D in = half(0, 10, 800), g = half(0, 2, 64);
        double d = 0.0;
        for (int n = 0; n <= 4; ++n) {
            SampledField s = fill(in, Geometry::radial_dim(mu, 0), [n](double r) { return cplx(std::pow(r, 2 * n)); });
            SampledField r = radial_heat_propagate(s, t, mu, g);
            double peak = 0.0, dev = 0.0;
            for (int i = 0; i < g.count; ++i) {
                double ref = radial_heat_poly_value(n, mu, g.at(i), t);
                peak = std::max(peak, std::fabs(ref));
                dev = std::max(dev, std::abs(r.values[i] - ref));
            }
            d = std::max(d, dev / peak);
        }
        out.push_back(make("transforms.radial_heat_poly", 7, {{"n_max", 4}, {"mu", mu}, {"t", t}}, d, 1e-6));
    }
    return out;
}

// ---- criterion 8 --------------------------------------------------------

std::vector<CheckResult> algebra_checks() {
    std::vector<CheckResult> out;
    const std::vector<double> hs{1e-2, 5e-3, 2.5e-3};
    std::vector<double> lin_pts, rad_pts;
    for (int i = 0; i < 9; ++i) {
        lin_pts.push_back(-2.0 + 0.5 * i);
        rad_pts.push_back(0.5 + 0.25 * i);
    }
    const CommutatorParams params{1, 1.5, -0.25};
    for (CommutatorPair p : {CommutatorPair::X_P, CommutatorPair::Kp_Km, CommutatorPair::Kpm_K3,
                             CommutatorPair::Radial_Kp_Km, CommutatorPair::Radial_Kpm_K3, CommutatorPair::Type1_Kp_Km,
                             CommutatorPair::Type1_Kpm_K3}) {
        const bool lin = p == CommutatorPair::X_P || p == CommutatorPair::Kp_Km || p == CommutatorPair::Kpm_K3;
        Fn1 f = lin ? Fn1([](double x) { return cplx(std::exp(-(x - 0.3) * (x - 0.3) / 2.0)); })
                    : Fn1([](double x) { return cplx(x * std::exp(-x * x / 2.0)); });
        std::vector<double> errs;
        for (double h : hs) errs.push_back(commutator_check(p, f, lin ? lin_pts : rad_pts, h, params));
        double order = observed_order(hs, errs);
        CheckResult cr = make(std::string("algebra.") + pair_name(p), 8, {{"h", hs}}, errs.back(), 0.0);
        cr.observed_order = order;
        cr.tolerance = 1.8;
        cr.pass = order >= 1.8 && order <= 2.2;
        out.push_back(cr);
    }
    for (int kind : {1, 2}) {
        Fn1 f = [](double x) { return cplx(std::pow(x, 4) * std::exp(-x * x / 2.0)); };
        std::vector<double> errs;
        for (double h : hs) errs.push_back(eigen_operator_check(kind, 1.0, -1.0, f, half(0, 10, 500), half(0.25, 3, 12), h));
        double order = observed_order(hs, errs);
        CheckResult cr = make("algebra.bessel_operator_kind" + std::to_string(kind), 8,
                              {{"nu", 1.0}, {"nu_prime", -1.0}, {"h", hs}}, errs.back(), 0.0);
        cr.observed_order = order;
        cr.tolerance = 1.8;
        cr.pass = order >= 1.8;
        out.push_back(cr);
    }
    return out;
}

// ---- criterion 9 --------------------------------------------------------

std::vector<CheckResult> genfun_checks() {
    return {make("genfun.heat_poly_sum", 9, {{"chi_max", 1.0}, {"x_max", 2.0}, {"t", 0.5}, {"n_max", 20}},
                 generating_function_check(1.0, 2.0, 0.5, 20), 1e-8)};
}

using Runner = std::vector<CheckResult> (*)();

struct SuiteDef {
    const char* name;
    int criterion;
    Runner run;
};

const SuiteDef kSuites[] = {
    {"matrix", 1, matrix_checks},     {"pairs", 2, pair_checks},           {"group", 3, group_checks},
    {"eigen", 4, eigen_checks},       {"residual", 5, residual_checks},    {"numeric", 6, numeric_checks},
    {"transforms", 7, transform_checks}, {"algebra", 8, algebra_checks}, {"genfun", 9, genfun_checks},
};

std::vector<CheckResult> guarded(const SuiteDef& s) {
    try {
        return s.run();
    } catch (const std::exception& e) {
        CheckResult r = make(std::string(s.name) + ".error", s.criterion, {{"error", e.what()}}, NAN, 0.0);
        return {r};
    }
}

}  // namespace

json CheckResult::to_json() const {
    auto opt = [](const std::optional<double>& v) { return v && std::isfinite(*v) ? json(*v) : json(nullptr); };
    return json{{"check_id", check_id},
                {"criterion", criterion},
                {"params", params},
                {"max_abs", std::isfinite(max_abs) ? json(max_abs) : json(nullptr)},
                {"l2", opt(l2)},
                {"observed_order", opt(observed_order)},
                {"tolerance", tolerance},
                {"pass", pass}};
}

bool SuiteReport::pass() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

json SuiteReport::to_json() const {
    json arr = json::array();
    for (const auto& c : checks) arr.push_back(c.to_json());
    return json{{"schema", "canonica-report/1"}, {"suite", suite}, {"checks", arr}, {"pass", pass()}};
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& s : kSuites) v.push_back(s.name);
        v.push_back("all");
        return v;
    }();
    return names;
}

std::string suite_for_criterion(int criterion) {
    for (const auto& s : kSuites)
        if (s.criterion == criterion) return s.name;
    throw DomainError("no suite for criterion " + std::to_string(criterion));
}

SuiteReport run_suite(const std::string& name) {
    SuiteReport rep;
    rep.suite = name;
    bool found = false;
    for (const auto& s : kSuites) {
        if (name != "all" && name != s.name) continue;
        found = true;
        auto c = guarded(s);
        rep.checks.insert(rep.checks.end(), c.begin(), c.end());
    }
    if (!found) throw DomainError("unknown suite '" + name + "'");
    return rep;
}

}  // namespace canonica
