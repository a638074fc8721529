#pragma once

#include <complex>

namespace canonica {

// Physicists' Hermite polynomial, n <= 64.
double hermite(int n, double x);
// Generalized Laguerre polynomial L_n^m(x), n <= 64, real order m.
double laguerre(int n, double m, double x);

// Airy Ai on the real line, |x| <= 50.
double airy_ai(double x);
// Airy Ai at complex argument, |z| <= 50.
std::complex<double> airy_ai(std::complex<double> z);

// Bessel J_nu(x) for nu >= -1/2, x >= 0.
double bessel_j(double nu, double x);
// Modified Bessel I_nu(x) for nu >= -1/2, 0 <= x <= 700.
double bessel_i(double nu, double x);
// exp(-x) I_nu(x) without the overflow guard.
double bessel_i_scaled(double nu, double x);

}  // namespace canonica
