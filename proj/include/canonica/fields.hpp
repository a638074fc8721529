#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "canonica/symplectic.hpp"

namespace canonica {

enum class GridKind { FullLine, HalfLine };

struct Grid1D {
    GridKind kind = GridKind::FullLine;
    double start = 0.0;
    double step = 1.0;
    int count = 2;

    static Grid1D from_range(GridKind kind, double a, double b, int n);
    double at(int i) const { return start + step * i; }
    double end() const { return at(count - 1); }
    void validate() const;
};

struct Geometry {
    enum class Kind { Linear, Radial, RadialType, RadialDim };
    Kind kind = Kind::Linear;
    int m = 0;
    double nu = 0.0;
    double nu_prime = 0.0;
    double n_dim = 0.0;

    static Geometry linear() { return {}; }
    static Geometry radial(int m);
    static Geometry radial_type(double nu, double nu_prime);
    static Geometry radial_dim(double n_dim, int m);

    bool is_radial() const { return kind != Kind::Linear; }
    // +1 or -1 when the field extends to negative radius with a definite parity.
    std::optional<int> parity() const;
    nlohmann::json to_json() const;
    static Geometry from_json(const nlohmann::json& j);
};

struct SampledField {
    Grid1D grid;
    std::vector<cplx> values;
    Geometry geometry;
    double evol = 0.0;
    std::vector<std::string> notes;

    void validate() const;
};

// Equation together with its separation parameter.
struct Equation {
    EquationKind kind = EquationKind::PWE;
    int m = 0;        // radial PWE azimuthal index
    double mu = 2.0;  // radial heat dimension parameter

    static Equation pwe() { return {EquationKind::PWE, 0, 2.0}; }
    static Equation radial_pwe(int m) { return {EquationKind::RadialPWE, m, 2.0}; }
    static Equation heat() { return {EquationKind::Heat, 0, 2.0}; }
    static Equation radial_heat(double mu) { return {EquationKind::RadialHeat, 0, mu}; }

    bool operator==(const Equation& o) const;
    bool is_radial() const { return kind == EquationKind::RadialPWE || kind == EquationKind::RadialHeat; }
    Geometry geometry() const;
    std::string describe() const;
};

enum class Family {
    PlaneChirp, PointSrc, AiryKM, AiryBB, Bessel, BesselGauss, StdHG, StdLG,
    HeatPoly, HeatAssoc, FundHeat, RadialHeatPoly, RadialHeatAppell, FundRadialHeat, Gauss
};

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& s);

struct AnalyticField {
    Family family = Family::Gauss;
    double lambda = 0.0;
    int n = 0;
    int m = 0;
    double mu = 3.0;
    double width = 1.0;
    double center = 0.0;
    double apod = 0.0;  // exponential apodization of the Airy beam

    static AnalyticField plane_chirp(double lambda);
    static AnalyticField point_src(double lambda);
    static AnalyticField airy_km(double lambda);
    static AnalyticField airy_bb(double lambda, double apod = 0.0);
    static AnalyticField bessel(double lambda, int m);
    static AnalyticField bessel_gauss(double lambda, int m);
    static AnalyticField std_hg(int n);
    static AnalyticField std_lg(int n, int m);
    static AnalyticField heat_poly(int n);
    static AnalyticField heat_assoc(int n);
    static AnalyticField fund_heat();
    static AnalyticField radial_heat_poly(int n, double mu);
    static AnalyticField radial_heat_appell(int n, double mu);
    static AnalyticField fund_radial_heat(double mu);
    static AnalyticField gauss(double width, double center);

    Equation equation() const;
    Geometry geometry() const;
};

cplx eval(const AnalyticField& f, double coord, double evol);
SampledField sample(const AnalyticField& f, const Grid1D& grid, double evol);

// Closed-form solution evaluable at any (coord, evol).
struct FieldExpr {
    Equation equation;
    std::function<cplx(double, double)> fn;
    // Solution generated by the Fourier (Hankel) transformed source, when known.
    std::function<cplx(double, double)> dual;

    cplx operator()(double x, double t) const { return fn(x, t); }
    bool has_dual() const { return static_cast<bool>(dual); }
};

FieldExpr to_expr(const AnalyticField& f);
SampledField sample(const FieldExpr& f, const Grid1D& grid, double evol);

// Terms (power of x, coefficient) of v_n = sum_j c_j x^(n-2j) t^j.
std::vector<std::pair<int, double>> heat_poly_coeffs(int n);
// R_{n,mu}(r,t) as a polynomial, valid for every t including 0.
double radial_heat_poly_value(int n, double mu, double r, double t);

void write_field_csv(std::ostream& os, const SampledField& f);
SampledField read_field_csv(std::istream& is);

}  // namespace canonica
