#include "canonica/specfun.hpp"

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

#include "canonica/errors.hpp"

namespace canonica {

using cplx = std::complex<double>;

double hermite(int n, double x) {
    if (n < 0 || n > 64) throw DomainError("hermite: degree out of range");
    if (n == 0) return 1.0;
    double hm = 1.0, h = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        double hp = 2.0 * x * h - 2.0 * k * hm;
        hm = h;
        h = hp;
    }
    return h;
}

double laguerre(int n, double m, double x) {
    if (n < 0 || n > 64) throw DomainError("laguerre: degree out of range");
    if (n == 0) return 1.0;
    double lm = 1.0, l = 1.0 + m - x;
    for (int k = 1; k < n; ++k) {
        double lp = ((2.0 * k + 1.0 + m - x) * l - (k + m) * lm) / (k + 1.0);
        lm = l;
        l = lp;
    }
    return l;
}

double airy_ai(double x) {
    if (!(std::fabs(x) <= 50.0)) throw DomainError("airy_ai: |x| > 50");
    return boost::math::airy_ai(x);
}

namespace {

constexpr double kAi0 = 0.355028053887817239260;
constexpr double kAip0 = 0.258819403792806798405;  // -Ai'(0)

cplx airy_series(cplx z) {
    cplx z3 = z * z * z;
    cplx f = 1.0, g = z;
    cplx tf = 1.0, tg = z;
    for (int k = 1; k < 400; ++k) {
        tf *= z3 / ((3.0 * k - 1.0) * (3.0 * k));
        tg *= z3 / ((3.0 * k) * (3.0 * k + 1.0));
        f += tf;
        g += tg;
        if (std::abs(tf) < 1e-18 * std::abs(f) && std::abs(tg) < 1e-18 * std::abs(g)) break;
    }
    return kAi0 * f - kAip0 * g;
}

// Leading asymptotic expansion, accurate for |arg z| <= 2pi/3.
cplx airy_asym(cplx z) {
    cplx zeta = (2.0 / 3.0) * z * std::sqrt(z);
    cplx sum = 1.0, term = 1.0;
    double u = 1.0, prev = 1e300;
    for (int k = 1; k < 60; ++k) {
        u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
        term = (k % 2 ? -1.0 : 1.0) * u / std::pow(zeta, k);
        double a = std::abs(term);
        if (a > prev) break;
        sum += term;
        prev = a;
        if (a < 1e-17) break;
    }
    return std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(z, 0.25)) * sum;
}

}  // namespace

cplx airy_ai(cplx z) {
    double r = std::abs(z);
    if (!(r <= 50.0)) throw DomainError("airy_ai: |z| > 50");
    if (z.imag() == 0.0) return airy_ai(z.real());
    if (r <= 7.0) return airy_series(z);
    if (std::fabs(std::arg(z)) <= 2.0 * std::numbers::pi / 3.0) return airy_asym(z);
    // connection formula Ai(z) = -w Ai(w z) - w^2 Ai(w^2 z)
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    return -w * airy_asym(w * z) - w * w * airy_asym(w * w * z);
}

double bessel_j(double nu, double x) {
    if (nu < -0.5 || x < 0.0) throw DomainError("bessel_j: nu >= -1/2 and x >= 0 required");
    if (x > 1e4 * (1.0 + std::fabs(nu))) throw DomainError("bessel_j: argument too large");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    return boost::math::cyl_bessel_j(nu, x);
}

double bessel_i(double nu, double x) {
    if (nu < -0.5 || x < 0.0) throw DomainError("bessel_i: nu >= -1/2 and x >= 0 required");
    if (x > 700.0) throw DomainError("bessel_i: argument above 700");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    return boost::math::cyl_bessel_i(nu, x);
}

double bessel_i_scaled(double nu, double x) {
    if (nu < -0.5 || x < 0.0) throw DomainError("bessel_i_scaled: nu >= -1/2 and x >= 0 required");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    if (x <= 600.0) return boost::math::cyl_bessel_i(nu, x) * std::exp(-x);
    // Hankel asymptotic series
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        double f = (2.0 * k - 1.0);
        term *= -(mu - f * f) / (k * 8.0 * x);
        sum += term;
        if (std::fabs(term) < 1e-17) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace canonica
