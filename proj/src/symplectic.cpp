#include "canonica/symplectic.hpp"

#include <cmath>
#include <numbers>

#include "canonica/errors.hpp"

namespace canonica {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx I{0.0, 1.0};
}  // namespace

const char* to_string(EquationKind k) {
    switch (k) {
        case EquationKind::PWE: return "pwe";
        case EquationKind::RadialPWE: return "radial-pwe";
        case EquationKind::Heat: return "heat";
        case EquationKind::RadialHeat: return "radial-heat";
    }
    return "?";
}

SympMat2 operator*(const SympMat2& x, const SympMat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

SympMat2 identity() { return {}; }

SympMat2 compose(const SympMat2& m1, const SympMat2& m2) { return m1 * m2; }

SympMat2 inverse(const SympMat2& m) { return {m.d, -m.b, -m.c, m.a}; }

SympMat2 mat_free(double zeta) { return {1.0, zeta, 0.0, 1.0}; }

SympMat2 mat_lens(double inv_f) { return {1.0, 0.0, -inv_f, 1.0}; }

SympMat2 mat_scale(cplx s) {
    if (s == cplx{0.0}) throw DomainError("mat_scale: zero scale");
    return {s, 0.0, 0.0, 1.0 / s};
}

SympMat2 mat_lower(cplx p) { return {1.0, 0.0, p, 1.0}; }

double reduce_alpha(double alpha) {
    double r = std::fmod(alpha, 4.0);
    if (r <= -2.0) r += 4.0;
    if (r > 2.0) r -= 4.0;
    return r;
}

bool alpha_equal(double a1, double a2, double tol) {
    double d = std::fmod(std::fabs(a1 - a2), 4.0);
    return d <= tol || 4.0 - d <= tol;
}

namespace {
// cos and sin of alpha*pi/2, exact at multiples of one half-turn quarter.
void quarter_cs(double alpha, double& c, double& s) {
    double r = reduce_alpha(alpha);
    if (r == 0.0) { c = 1.0; s = 0.0; return; }
    if (r == 1.0) { c = 0.0; s = 1.0; return; }
    if (r == 2.0) { c = -1.0; s = 0.0; return; }
    if (r == -1.0) { c = 0.0; s = -1.0; return; }
    double phi = r * kPi / 2.0;
    c = std::cos(phi);
    s = std::sin(phi);
}
}  // namespace

SympMat2 mat_fourier(double alpha) {
    double c, s;
    quarter_cs(alpha, c, s);
    return {c, s, -s, c};
}

SympMat2 mat_laplace(double alpha) {
    double c, s;
    quarter_cs(alpha, c, s);
    return {c, I * s, I * s, c};
}

SympMat2 mat_poisson(double tau) {
    if (!(tau > 0.0)) throw DomainError("mat_poisson: tau must be positive");
    return {1.0, -I * tau, 0.0, 1.0};
}

SympMat2 mat_gauss_aperture(double inv_w) {
    if (!(inv_w > 0.0)) throw DomainError("mat_gauss_aperture: width must be positive");
    return {1.0, 0.0, I * inv_w, 1.0};
}

SympMat2 mat_bargmann() {
    const double r = 1.0 / std::sqrt(2.0);
    return {r, -I * r, -I * r, r};
}

SympMat2 mat_appell(EquationKind eq, double alpha, double evol) {
    switch (eq) {
        case EquationKind::PWE:
        case EquationKind::RadialPWE:
            return mat_free(evol) * mat_fourier(alpha) * mat_free(-evol);
        case EquationKind::Heat:
        case EquationKind::RadialHeat: {
            // P(t) L^a P(-t) with P(tau) = [[1, -i tau], [0, 1]]
            SympMat2 p{1.0, -I * evol, 0.0, 1.0};
            SympMat2 pinv{1.0, I * evol, 0.0, 1.0};
            return p * mat_laplace(alpha) * pinv;
        }
    }
    throw DomainError("mat_appell: unknown equation");
}

bool is_unimodular(const SympMat2& m, double tol) { return std::abs(m.det() - 1.0) <= tol; }

bool is_real(const SympMat2& m, double tol) {
    return std::fabs(m.a.imag()) <= tol && std::fabs(m.b.imag()) <= tol &&
           std::fabs(m.c.imag()) <= tol && std::fabs(m.d.imag()) <= tol;
}

bool is_lform(const SympMat2& m, double tol) {
    return std::fabs(m.a.imag()) <= tol && std::fabs(m.d.imag()) <= tol &&
           std::fabs(m.b.real()) <= tol && std::fabs(m.c.real()) <= tol;
}

double max_abs_diff(const SympMat2& x, const SympMat2& y) {
    return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c),
                     std::abs(x.d - y.d)});
}

bool approx_equal(const SympMat2& x, const SympMat2& y, double tol) {
    return max_abs_diff(x, y) <= tol;
}

SympMat2 WeiNormanReal::recompose() const {
    return mat_lower(lens_power) * mat_scale(scale) * SympMat2{1.0, free_length, 0.0, 1.0};
}

SympMat2 WeiNormanLForm::recompose() const {
    SympMat2 g{1.0, 0.0, I * inv_width, 1.0};
    SympMat2 p{1.0, -I * tau, 0.0, 1.0};
    return g * mat_scale(scale) * p;
}

WeiNormanReal wei_norman_real(const SympMat2& m) {
    if (std::abs(m.a) <= 1e-14) throw ImagingSingular("wei_norman_real: A = 0, use the Fourier-type path");
    cplx lens = m.c / m.a;
    if (std::fabs(lens.imag()) > 1e-12)
        throw DomainError("wei_norman_real: lens power C/A is not real");
    return {lens.real(), m.a, m.b / m.a};
}

WeiNormanLForm wei_norman_lform(const SympMat2& m) {
    if (!is_lform(m)) throw NotLForm("wei_norman_lform: matrix is not of L-form");
    if (std::fabs(m.a.real()) <= 1e-14) throw LaplaceSingular("wei_norman_lform: A = 0");
    double a = m.a.real();
    // b = -i tau A and c = i A / w
    double tau = (I * m.b).real() / a;
    double inv_w = (-I * m.c).real() / a;
    return {inv_w, a, tau};
}

nlohmann::json to_json(const SympMat2& m) {
    auto pair = [](cplx z) { return nlohmann::json::array({z.real(), z.imag()}); };
    return {{"a", pair(m.a)}, {"b", pair(m.b)}, {"c", pair(m.c)}, {"d", pair(m.d)}};
}

SympMat2 matrix_from_json(const nlohmann::json& j) {
    auto get = [&](const char* k) -> cplx {
        if (!j.contains(k)) throw ParseError(std::string("matrix json: missing entry ") + k);
        const auto& v = j.at(k);
        if (v.is_number()) return {v.get<double>(), 0.0};
        if (!v.is_array() || v.size() != 2) throw ParseError(std::string("matrix json: bad entry ") + k);
        return {v[0].get<double>(), v[1].get<double>()};
    };
    SympMat2 m{get("a"), get("b"), get("c"), get("d")};
    if (!is_unimodular(m)) throw DomainError("matrix json: determinant differs from 1");
    return m;
}

}  // namespace canonica
