#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "canonica/errors.hpp"
#include "canonica/fields.hpp"
#include "canonica/specfun.hpp"

using namespace canonica;
using std::numbers::pi;
const cplx I{0.0, 1.0};

TEST_CASE("grids") {
    Grid1D g = Grid1D::from_range(GridKind::FullLine, -1.0, 1.0, 5);
    CHECK(g.step == doctest::Approx(0.5));
    CHECK(g.end() == doctest::Approx(1.0));
    CHECK_THROWS_AS(Grid1D::from_range(GridKind::FullLine, 1.0, -1.0, 5), DomainError);
    CHECK_THROWS_AS(Grid1D::from_range(GridKind::HalfLine, -1.0, 1.0, 5), DomainError);
    CHECK_THROWS_AS(Grid1D::from_range(GridKind::FullLine, 0.0, 1.0, 1), DomainError);
}

TEST_CASE("point values of the families") {
    CHECK(std::abs(eval(AnalyticField::plane_chirp(2.0), 0.0, 1.0) - std::exp(-2.0 * I) / std::sqrt(2.0 * pi)) < 1e-15);
    for (double x : {-1.3, 0.0, 2.1})
        for (double t : {-0.5, 0.0, 0.8})
            CHECK(std::abs(eval(AnalyticField::heat_poly(2), x, t) - (x * x + t)) < 1e-14);
    CHECK(std::abs(eval(AnalyticField::std_hg(0), 0.0, 0.0) - std::pow(pi, -0.25)) < 1e-15);
    CHECK(std::abs(eval(AnalyticField::bessel(1.7, 0), 0.0, 0.0) - 1.0) < 1e-15);
    CHECK(std::abs(eval(AnalyticField::bessel(2.0, 1), 3.0, 0.0) - bessel_j(1.0, 6.0)) < 1e-15);
    // w_0 = S
    for (double x : {-1.0, 0.5})
        CHECK(std::abs(eval(AnalyticField::heat_assoc(0), x, 1.0) - std::exp(-x * x / 2.0) / std::sqrt(2.0 * pi)) <
              1e-15);
    // point source from the propagated chirp
    double z = 0.7, l = 2.0, x = 0.4;
    cplx ps = std::exp(I * (x - l) * (x - l) / (2.0 * z)) / std::sqrt(2.0 * pi * I * z);
    CHECK(std::abs(eval(AnalyticField::point_src(l), x, z) - ps) < 1e-15);
    CHECK_THROWS_AS(eval(AnalyticField::point_src(l), x, 0.0), DomainError);
    CHECK_THROWS_AS(eval(AnalyticField::fund_heat(), x, -1.0), DomainError);
}

TEST_CASE("heat polynomial coefficients") {
    CHECK(heat_poly_coeffs(0) == std::vector<std::pair<int, double>>{{0, 1.0}});
    CHECK(heat_poly_coeffs(2) == std::vector<std::pair<int, double>>{{2, 1.0}, {0, 1.0}});
    CHECK(heat_poly_coeffs(3) == std::vector<std::pair<int, double>>{{3, 1.0}, {1, 3.0}});
    // (t d2 + x d - n) v_n = 0 coefficientwise
    for (int n = 0; n <= 8; ++n) {
        auto c = heat_poly_coeffs(n);
        for (double x : {-1.1, 0.3, 2.0})
            for (double t : {-0.7, 0.4}) {
                double v = 0, vx = 0, vxx = 0;
                for (auto [p, a] : c) {
                    int j = (n - p) / 2;
                    double tj = std::pow(t, j);
                    v += a * std::pow(x, p) * tj;
                    if (p >= 1) vx += a * p * std::pow(x, p - 1) * tj;
                    if (p >= 2) vxx += a * p * (p - 1) * std::pow(x, p - 2) * tj;
                }
                CHECK(std::fabs(t * vxx + x * vx - n * v) < 1e-10);
            }
    }
    // v_n = (-t/2)^(n/2) H_n(x / sqrt(-2t)) for t < 0
    for (int n = 0; n <= 6; ++n) {
        double x = 0.9, t = -0.6;
        double ref = std::pow(-t / 2.0, n / 2.0) * hermite(n, x / std::sqrt(-2.0 * t));
        CHECK(std::abs(eval(AnalyticField::heat_poly(n), x, t) - ref) < 1e-12);
    }
}

TEST_CASE("radial heat polynomials") {
    CHECK(radial_heat_poly_value(0, 3.0, 1.2, 0.4) == doctest::Approx(1.0));
    CHECK(radial_heat_poly_value(1, 3.0, 1.2, 0.4) == doctest::Approx(1.44 + 1.2));
    for (int n = 0; n <= 4; ++n) CHECK(radial_heat_poly_value(n, 2.5, 1.3, 0.0) == doctest::Approx(std::pow(1.3, 2 * n)));
    // Laguerre form 2^n n! t^n L_n^{mu/2-1}(-r^2/2t)
    double mu = 3.0, r = 0.8, t = 0.5;
    CHECK(radial_heat_poly_value(3, mu, r, t) ==
          doctest::Approx(8.0 * 6.0 * t * t * t * laguerre(3, mu / 2.0 - 1.0, -r * r / (2.0 * t))));
}

TEST_CASE("sampling and geometry") {
    Grid1D g = Grid1D::from_range(GridKind::FullLine, -2.0, 2.0, 8);
    SampledField s = sample(AnalyticField::gauss(1.0, 0.0), g, 0.0);
    REQUIRE(s.values.size() == 8);
    for (int i = 0; i < 8; ++i) CHECK(std::abs(s.values[i] - std::exp(-g.at(i) * g.at(i) / 2.0)) < 1e-15);
    Grid1D h = Grid1D::from_range(GridKind::HalfLine, 0.0, 2.0, 8);
    CHECK_THROWS_AS(sample(AnalyticField::gauss(1.0, 0.0), h, 0.0), GeometryMismatch);
    CHECK_THROWS_AS(sample(AnalyticField::bessel(1.0, 1), g, 0.0), GeometryMismatch);
    CHECK(AnalyticField::std_lg(1, 2).geometry().parity() == 1);
    CHECK(AnalyticField::bessel(1.0, 1).geometry().parity() == -1);
    Geometry t = Geometry::radial_type(1.5, -0.25);
    Geometry back = Geometry::from_json(t.to_json());
    CHECK(back.kind == Geometry::Kind::RadialType);
    CHECK(back.nu == 1.5);
    CHECK(back.nu_prime == -0.25);
    CHECK(family_from_name("std-lg") == Family::StdLG);
    CHECK_FALSE(family_from_name("nope").has_value());
}

TEST_CASE("duals") {
    FieldExpr e = to_expr(AnalyticField::plane_chirp(1.5));
    REQUIRE(e.has_dual());
    CHECK(std::abs(e.dual(0.3, 0.9) - eval(AnalyticField::point_src(1.5), 0.3, 0.9)) < 1e-15);
    FieldExpr hg = to_expr(AnalyticField::std_hg(3));
    CHECK(std::abs(hg.dual(0.3, 0.9) - I * eval(AnalyticField::std_hg(3), 0.3, 0.9)) < 1e-15);
    CHECK_FALSE(to_expr(AnalyticField::heat_poly(2)).has_dual());
}

TEST_CASE("csv round trip") {
    Grid1D g = Grid1D::from_range(GridKind::HalfLine, 0.0, 3.0, 7);
    SampledField s = sample(AnalyticField::std_lg(1, 2), g, 0.4);
    std::stringstream ss;
    write_field_csv(ss, s);
    SampledField r = read_field_csv(ss);
    CHECK(r.grid.count == 7);
    CHECK(r.grid.kind == GridKind::HalfLine);
    CHECK(r.evol == 0.4);
    CHECK(r.geometry.m == 2);
    for (int i = 0; i < 7; ++i) CHECK(r.values[i] == s.values[i]);

    std::stringstream bad("# canonica-field v1 {\"count\":2,\"evol\":0,\"geometry\":{\"type\":\"Linear\"},"
                          "\"kind\":\"FullLine\",\"start\":0,\"step\":1}\n0,1,0\n1,oops,0\n");
    try {
        read_field_csv(bad);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    std::stringstream nohead("0,1,0\n");
    CHECK_THROWS_AS(read_field_csv(nohead), ParseError);
}
