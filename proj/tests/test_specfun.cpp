#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "canonica/errors.hpp"
#include "canonica/specfun.hpp"

using namespace canonica;
using cplx = std::complex<double>;

static double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

TEST_CASE("Hermite and Laguerre") {
    CHECK(hermite(0, 3.3) == 1.0);
    CHECK(hermite(2, 1.0) == doctest::Approx(2.0));
    CHECK(hermite(3, 0.0) == 0.0);
    CHECK(rel(hermite(10, 1.3), -66123.4130330624094210901020233) < 1e-13);
    CHECK(laguerre(0, 2.0, 5.0) == 1.0);
    CHECK(laguerre(1, 0.0, 2.0) == doctest::Approx(-1.0));
    CHECK(laguerre(2, 1.0, 0.0) == doctest::Approx(3.0));
    CHECK(rel(laguerre(5, 1.5, 2.2), -0.804546416666666164254480738312) < 1e-13);
    CHECK(rel(laguerre(7, 0.0, 10.5), -39.64033203125) < 1e-13);
}

TEST_CASE("Airy") {
    CHECK(rel(airy_ai(0.0), 0.355028053887817239260063186004) < 1e-14);
    CHECK(rel(airy_ai(10.0), 1.1047532552898685933550205658e-10) < 1e-10);
    CHECK(rel(airy_ai(-5.5), 0.0177815412765749756030201514972) < 1e-10);
    CHECK(rel(airy_ai(-40.0), -0.0459339234379572496322607178766) < 1e-9);
    cplx z = airy_ai(cplx(1.0, 2.0));
    CHECK(std::abs(z - cplx(-0.219386254981427557402586059297, -0.175385911408109417891384406208)) < 1e-12);
    z = airy_ai(cplx(-3.0, 0.5));
    CHECK(std::abs(z - cplx(-0.528172341882349678185096483013, 0.186822985529678440779073496733)) < 1e-12);
    for (double x : {-2.0, 0.0, 2.0}) {
        double h = 2e-4;
        double d2 = (airy_ai(x + h) - 2.0 * airy_ai(x) + airy_ai(x - h)) / (h * h);
        CHECK(std::fabs(d2 - x * airy_ai(x)) < 1e-7);
    }
    CHECK_THROWS_AS(airy_ai(51.0), DomainError);
    CHECK_THROWS_AS(airy_ai(cplx(0.0, 60.0)), DomainError);
}

TEST_CASE("Bessel J") {
    CHECK(bessel_j(0.0, 0.0) == 1.0);
    CHECK(bessel_j(2.0, 0.0) == 0.0);
    CHECK(std::fabs(bessel_j(0.0, 2.404825557695773)) < 1e-9);
    CHECK(rel(bessel_j(0.5, 3.7), -0.219776259850527834858010937734) < 1e-13);
    CHECK(rel(bessel_j(2.5, 12.3), 0.00516691768689268265635979559802) < 1e-10);
    CHECK(rel(bessel_j(3.0, 0.01), 2.08332031253255216822505229891e-8) < 1e-12);
    CHECK(rel(bessel_j(1.0, 40.0), 0.126038318037584999205602721839) < 1e-12);
    for (double nu : {0.5, 1.0, 2.3})
        for (double x : {0.7, 5.0, 17.0})
            CHECK(std::fabs(bessel_j(nu - 1.0, x) + bessel_j(nu + 1.0, x) - 2.0 * nu / x * bessel_j(nu, x)) < 1e-9);
    CHECK_THROWS_AS(bessel_j(-0.6, 1.0), DomainError);
}

TEST_CASE("Bessel I") {
    CHECK(rel(bessel_i(1.5, 20.0), 41115758.9588074820336626423807) < 1e-13);
    CHECK(rel(bessel_i_scaled(0.3, 500.0), 0.0178440988494297083884019570065) < 1e-12);
    CHECK(rel(bessel_i(0.0, 1e-4), 1.00000000250000000156250000043) < 1e-15);
    // half-integer closed form: I_{1/2}(x) = sqrt(2/(pi x)) sinh x
    for (double x : {0.3, 2.0, 9.0})
        CHECK(rel(bessel_i(0.5, x), std::sqrt(2.0 / (M_PI * x)) * std::sinh(x)) < 1e-13);
    CHECK_THROWS_AS(bessel_i(0.0, 701.0), DomainError);
}
