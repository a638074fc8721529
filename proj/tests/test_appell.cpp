#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "canonica/appell.hpp"
#include "canonica/errors.hpp"
#include "canonica/fields.hpp"
#include "canonica/transforms.hpp"

using namespace canonica;
using std::numbers::pi;
const cplx I{0.0, 1.0};

namespace {

Grid1D full(double a, double b, int n) { return Grid1D::from_range(GridKind::FullLine, a, b, n); }
Grid1D half(double a, double b, int n) { return Grid1D::from_range(GridKind::HalfLine, a, b, n); }

double dev(const FieldExpr& a, const std::function<cplx(double, double)>& b, const Grid1D& g, double t) {
    double d = 0.0;
    for (int i = 0; i < g.count; ++i) d = std::max(d, std::abs(a(g.at(i), t) - b(g.at(i), t)));
    return d;
}

std::function<cplx(double, double)> ev(const AnalyticField& f, cplx scale = 1.0) {
    return [f, scale](double x, double t) { return scale * eval(f, x, t); };
}

FieldExpr shifted_heat(double t0) {
    return {Equation::heat(),
            [t0](double x, double t) { return std::exp(-x * x / (2.0 * (t + t0))) / std::sqrt(cplx(2.0 * pi * (t + t0))); },
            {}};
}

}  // namespace

TEST_CASE("Appell pairs") {
    Grid1D g = full(-4, 4, 101);
    AppellSpec pwe{Equation::pwe(), 1.0, 0.0, Direction::Forward};
    FieldExpr w = appell_analytic(AnalyticField::plane_chirp(2.0), pwe);
    for (double z : {0.3, 0.7, 1.9}) CHECK(dev(w, ev(AnalyticField::point_src(2.0)), g, z) < 1e-12);

    w = appell_analytic(AnalyticField::airy_km(1.0), pwe);
    CHECK(dev(w, ev(AnalyticField::airy_bb(1.0)), g, 1.0) < 1e-9);
    AppellSpec inv{Equation::pwe(), 1.0, 0.0, Direction::Inverse};
    w = appell_analytic(AnalyticField::airy_bb(1.0), inv);
    CHECK(dev(w, ev(AnalyticField::airy_km(1.0)), g, 1.0) < 1e-9);

    for (int m = 0; m <= 3; ++m) {
        AppellSpec r{Equation::radial_pwe(m), 1.0, 0.0, Direction::Forward};
        w = appell_analytic(AnalyticField::bessel(1.5, m), r);
        CHECK(dev(w, ev(AnalyticField::bessel_gauss(1.5, m)), half(0, 5, 101), 0.8) < 1e-9);
    }
    AppellSpec heat{Equation::heat(), 1.0, 0.0, Direction::Forward};
    for (int n = 0; n <= 6; ++n) {
        w = appell_analytic(AnalyticField::heat_poly(n), heat);
        CHECK(dev(w, ev(AnalyticField::heat_assoc(n), std::sqrt(2.0 * pi)), full(-3, 3, 61), 0.5) < 1e-10);
    }
    AppellSpec rh{Equation::radial_heat(3.0), 1.0, 0.0, Direction::Forward};
    w = appell_analytic(AnalyticField::radial_heat_poly(2, 3.0), rh);
    CHECK(dev(w, ev(AnalyticField::radial_heat_appell(2, 3.0), std::pow(2.0 * pi, 1.5)), half(0, 3, 61), 0.5) < 1e-9);

    AppellSpec zero{Equation::pwe(), 2.0, 0.0, Direction::Forward};
    zero.alpha = 0.0;
    FieldExpr src = to_expr(AnalyticField::gauss(1.0, 0.3));
    CHECK(dev(appell_analytic(src, zero), src.fn, g, 0.4) == 0.0);
}

TEST_CASE("group law, inverse and involution") {
    FieldExpr src = to_expr(AnalyticField::gauss(0.8, -0.2));
    auto map = [](const FieldExpr& f, double a, Direction d = Direction::Forward) {
        return appell_analytic(f, {f.equation, a, 0.0, d});
    };
    Grid1D g = full(-3, 3, 61);
    FieldExpr two = map(map(src, 0.4), 0.3), one = map(src, 0.7);
    for (double z : {0.2, 0.9, 1.4}) CHECK(dev(two, one.fn, g, z) < 1e-10);
    FieldExpr back = map(map(src, 1.3), 1.3, Direction::Inverse);
    for (double z : {0.2, 0.9}) CHECK(dev(back, src.fn, g, z) < 1e-10);
    FieldExpr h = shifted_heat(2.5);
    FieldExpr h2 = map(map(h, -0.5), 1.2), h1 = map(h, 0.7);
    for (double t : {0.3, 1.1}) CHECK(dev(h2, h1.fn, full(-2, 2, 41), t) < 1e-10);
    FieldExpr bg = to_expr(AnalyticField::bessel_gauss(1.2, 2));
    FieldExpr twice = map(map(bg, 1.0), 1.0);
    CHECK(dev(twice, bg.fn, half(0, 4, 41), 0.6) < 1e-10);
}

TEST_CASE("singular locus uses the dual solution") {
    // A = cos(phi) - zeta sin(phi) vanishes at zeta = 1 for alpha = 1/2
    FieldExpr src = to_expr(AnalyticField::gauss(1.0, 0.3));
    FieldExpr w = appell_analytic(src, {Equation::pwe(), 0.5, 0.0, Direction::Forward});
    for (double x : {-1.0, 0.4}) {
        cplx at = w(x, 1.0), near = w(x, 1.0 + 1e-7);
        CHECK(std::abs(at - near) < 1e-5);
    }
    FieldExpr bare{Equation::pwe(), src.fn, {}};
    FieldExpr wb = appell_analytic(bare, {Equation::pwe(), 0.5, 0.0, Direction::Forward});
    CHECK_THROWS_AS(wb(0.0, 1.0), SingularEvol);
    FieldExpr hw = appell_analytic(shifted_heat(1.0), {Equation::heat(), -0.5, 0.0, Direction::Forward});
    CHECK_THROWS_AS(hw(0.0, 1.0), SingularEvol);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(appell_analytic(AnalyticField::heat_poly(2), {Equation::pwe(), 1.0, 0.0, Direction::Forward}),
                    EquationMismatch);
    CHECK_THROWS_AS(appell_analytic(AnalyticField::radial_heat_poly(1, 3.0),
                                    {Equation::radial_heat(3.0), 0.5, 0.0, Direction::Forward}),
                    DomainError);
    AppellSpec bad{Equation::pwe(), 2.5, 0.0, Direction::Forward};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    AppellSpec s{Equation::radial_heat(4.0), -1.0, 0.7, Direction::Inverse};
    AppellSpec r = AppellSpec::from_json(s.to_json());
    CHECK(r.equation == s.equation);
    CHECK(r.alpha == s.alpha);
    CHECK(r.evol == s.evol);
    CHECK(r.direction == s.direction);
    CHECK(s.effective_alpha() == doctest::Approx(1.0));
}

TEST_CASE("matrices of the maps") {
    for (double a : {0.3, 1.0, -1.4})
        for (double z : {0.0, 0.6}) {
            AppellSpec p{Equation::pwe(), a, z, Direction::Forward};
            CHECK(max_abs_diff(appell_matrix(p), numeric_path_matrix(p)) < 1e-14);
            CHECK(max_abs_diff(appell_matrix(p), mat_appell(EquationKind::PWE, a, z)) < 1e-14);
            AppellSpec h{Equation::heat(), a, z, Direction::Forward};
            CHECK(max_abs_diff(appell_matrix(h), numeric_path_matrix(h)) < 1e-14);
        }
}

TEST_CASE("self-Appell modes") {
    for (double a : {0.3, 1.0, 1.7}) CHECK(self_appell_eigencheck({SelfAppellMode::Kind::HG, 0, 0}, a, 0.5, full(-5, 5, 101)) <= 1e-10);
    CHECK(self_appell_eigencheck({SelfAppellMode::Kind::HG, 3, 0}, 1.0, 0.5, full(-5, 5, 101)) <= 1e-8);
    CHECK(self_appell_eigencheck({SelfAppellMode::Kind::LG, 2, 1}, 0.5, 1.0, half(0, 5, 101)) <= 1e-8);
    CHECK(std::abs(self_appell_eigenvalue({SelfAppellMode::Kind::HG, 3, 0}, 1.0) - I) < 1e-15);
    CHECK(std::abs(self_appell_eigenvalue({SelfAppellMode::Kind::LG, 1, 2}, 0.5) + I) < 1e-15);
    CHECK_THROWS_AS(self_appell_eigencheck({SelfAppellMode::Kind::HG, 9, 0}, 1.0, 0.5, full(-5, 5, 11)), DomainError);
}

TEST_CASE("numeric path") {
    QuadratureConfig chirp;
    chirp.scheme = Scheme::ChirpFFT;
    {
        Grid1D g = full(-15, 15, 4096);
        AnalyticField f = AnalyticField::gauss(1.0, 0.3);
        AppellSpec sp{Equation::pwe(), 1.0, 0.7, Direction::Forward};
        SampledField num = appell_numeric(sample(f, g, 0.0), sp, g, chirp);
        CHECK(rel_l2(num.values, sample(appell_analytic(f, sp), g, 0.7).values) <= 1e-5);
        // orders beyond a quarter turn, both signs, on either side of the focus
        for (double a : {-1.5, -1.3, 1.3})
            for (double z : {-0.6, 0.4, 1.6}) {
                AppellSpec q{Equation::pwe(), a, z, Direction::Forward};
                SampledField n2 = appell_numeric(sample(f, g, 0.0), q, g, chirp);
                CHECK(rel_l2(n2.values, sample(appell_analytic(f, q), g, z).values) <= 1e-10);
            }
        AnalyticField hg = AnalyticField::std_hg(0);
        SampledField h = appell_numeric(sample(hg, g, 0.0), sp, g, chirp);
        CHECK(rel_l2(h.values, sample(hg, g, 0.7).values) <= 1e-8);
    }
    {
        Grid1D sg = full(-32, 32, 2048), mg = full(-10, 10, 1024), og = full(-2, 2, 65);
        FieldExpr src = shifted_heat(0.4);
        SampledField s = sample(src, sg, 0.0);
        for (double a : {1.0, -0.5, 1.2, -1.2}) {
            AppellSpec sp{Equation::heat(), a, 0.3, Direction::Forward};
            SampledField num = appell_numeric(s, sp, og, {}, mg);
            CHECK(rel_l2(num.values, sample(appell_analytic(src, sp), og, 0.3).values) <= 1e-8);
        }
    }
    {
        const int m = 1;
        Grid1D sg = half(0, 12, 500), og = half(0, 5, 60);
        FieldExpr src{Equation::radial_pwe(m),
                      [](double r, double z) { return r * std::exp(-r * r / (2.0 * (1.0 + I * z))) / std::pow(1.0 + I * z, 2); },
                      {}};
        AppellSpec sp{Equation::radial_pwe(m), 0.6, 0.7, Direction::Forward};
        SampledField num = appell_numeric(sample(src, sg, 0.0), sp, og, {}, sg);
        CHECK(rel_l2(num.values, sample(appell_analytic(src, sp), og, 0.7).values) <= 1e-8);
    }
    {
        const double mu = 3.0;
        Grid1D sg = half(0, 26, 700), mg = half(0, 14, 400), og = half(0, 4, 41);
        FieldExpr src{Equation::radial_heat(mu),
                      [mu](double r, double t) { return std::pow(cplx(2 * pi * (t + 1)), -mu / 2) * std::exp(-r * r / (2 * (t + 1))); },
                      {}};
        AppellSpec sp{Equation::radial_heat(mu), 1.0, 0.5, Direction::Forward};
        SampledField num = appell_numeric(sample(src, sg, 0.0), sp, og, {}, mg);
        CHECK(rel_l2(num.values, sample(appell_analytic(src, sp), og, 0.5).values) <= 1e-7);
    }
}
