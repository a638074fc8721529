#pragma once

#include <complex>
#include <string>

#include <json.hpp>

namespace canonica {

using cplx = std::complex<double>;

enum class EquationKind { PWE, RadialPWE, Heat, RadialHeat };

const char* to_string(EquationKind k);

// 2x2 complex matrix [[a, b], [c, d]] with ad - bc = 1.
struct SympMat2 {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    cplx det() const { return a * d - b * c; }
};

SympMat2 operator*(const SympMat2& x, const SympMat2& y);

SympMat2 identity();
SympMat2 compose(const SympMat2& m1, const SympMat2& m2);

template <class... Rest>
SympMat2 compose(const SympMat2& m1, const SympMat2& m2, const Rest&... rest) {
    return compose(compose(m1, m2), rest...);
}

SympMat2 inverse(const SympMat2& m);

SympMat2 mat_free(double zeta);
SympMat2 mat_lens(double inv_f);
SympMat2 mat_scale(cplx s);
SympMat2 mat_lower(cplx p);  // [[1,0],[p,1]]
SympMat2 mat_fourier(double alpha);
SympMat2 mat_laplace(double alpha);
SympMat2 mat_poisson(double tau);
SympMat2 mat_gauss_aperture(double inv_w);
SympMat2 mat_bargmann();
SympMat2 mat_appell(EquationKind eq, double alpha, double evol);

bool is_unimodular(const SympMat2& m, double tol = 1e-12);
bool is_real(const SympMat2& m, double tol = 1e-14);
bool is_lform(const SympMat2& m, double tol = 1e-12);

double max_abs_diff(const SympMat2& x, const SympMat2& y);
bool approx_equal(const SympMat2& x, const SympMat2& y, double tol = 1e-12);

// Fractional order folded into (-2, 2].
double reduce_alpha(double alpha);
// Equality of fractional orders modulo 4.
bool alpha_equal(double a1, double a2, double tol = 1e-12);

struct WeiNormanReal {
    double lens_power = 0.0;  // C/A
    cplx scale{1.0};          // A
    cplx free_length{0.0};    // B/A

    SympMat2 recompose() const;
};

struct WeiNormanLForm {
    double inv_width = 0.0;  // -C/A of the i-stripped form
    double scale = 1.0;      // A
    double tau = 0.0;        // -B/A of the i-stripped form

    SympMat2 recompose() const;
};

WeiNormanReal wei_norman_real(const SympMat2& m);
WeiNormanLForm wei_norman_lform(const SympMat2& m);

nlohmann::json to_json(const SympMat2& m);
SympMat2 matrix_from_json(const nlohmann::json& j);

}  // namespace canonica
