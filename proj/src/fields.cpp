#include "canonica/fields.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "canonica/errors.hpp"
#include "canonica/specfun.hpp"

namespace canonica {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx I{0.0, 1.0};

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

cplx ipow(cplx z, int n) {
    cplx r = 1.0;
    bool neg = n < 0;
    for (int k = 0; k < std::abs(n); ++k) r *= z;
    return neg ? 1.0 / r : r;
}
}  // namespace

Grid1D Grid1D::from_range(GridKind kind, double a, double b, int n) {
    if (n < 2) throw DomainError("grid: count must be at least 2");
    Grid1D g{kind, a, (b - a) / (n - 1), n};
    g.validate();
    return g;
}

void Grid1D::validate() const {
    if (count < 2) throw DomainError("grid: count must be at least 2");
    if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("grid: step must be positive");
    if (kind == GridKind::HalfLine && start < 0.0) throw DomainError("grid: half-line grid starts below 0");
}

Geometry Geometry::radial(int m) {
    if (m < 0) throw DomainError("geometry: negative azimuthal index");
    Geometry g;
    g.kind = Kind::Radial;
    g.m = m;
    return g;
}

Geometry Geometry::radial_type(double nu, double nu_prime) {
    Geometry g;
    g.kind = Kind::RadialType;
    g.nu = nu;
    g.nu_prime = nu_prime;
    return g;
}

Geometry Geometry::radial_dim(double n_dim, int m) {
    Geometry g;
    g.kind = Kind::RadialDim;
    g.n_dim = n_dim;
    g.m = m;
    return g;
}

std::optional<int> Geometry::parity() const {
    switch (kind) {
        case Kind::Radial:
        case Kind::RadialDim: return (m % 2) ? -1 : 1;
        default: return std::nullopt;
    }
}

nlohmann::json Geometry::to_json() const {
    switch (kind) {
        case Kind::Linear: return {{"type", "Linear"}};
        case Kind::Radial: return {{"type", "Radial"}, {"m", m}};
        case Kind::RadialType: return {{"type", "RadialType"}, {"nu", nu}, {"nu_prime", nu_prime}};
        case Kind::RadialDim: return {{"type", "RadialDim"}, {"n_dim", n_dim}, {"m", m}};
    }
    return {};
}

Geometry Geometry::from_json(const nlohmann::json& j) {
    std::string t = j.at("type").get<std::string>();
    if (t == "Linear") return linear();
    if (t == "Radial") return radial(j.at("m").get<int>());
    if (t == "RadialType") return radial_type(j.at("nu").get<double>(), j.at("nu_prime").get<double>());
    if (t == "RadialDim") return radial_dim(j.at("n_dim").get<double>(), j.at("m").get<int>());
    throw ParseError("geometry: unknown type " + t);
}

void SampledField::validate() const {
    grid.validate();
    if (static_cast<int>(values.size()) != grid.count) throw DomainError("field: value count differs from grid");
    if (geometry.is_radial() && grid.kind != GridKind::HalfLine)
        throw GeometryMismatch("field: radial geometry needs a half-line grid");
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("field: non-finite sample");
}

bool Equation::operator==(const Equation& o) const {
    if (kind != o.kind) return false;
    if (kind == EquationKind::RadialPWE) return m == o.m;
    if (kind == EquationKind::RadialHeat) return mu == o.mu;
    return true;
}

Geometry Equation::geometry() const {
    switch (kind) {
        case EquationKind::RadialPWE: return Geometry::radial(m);
        case EquationKind::RadialHeat: return Geometry::radial_dim(mu, 0);
        default: return Geometry::linear();
    }
}

std::string Equation::describe() const {
    std::ostringstream os;
    os << to_string(kind);
    if (kind == EquationKind::RadialPWE) os << "(m=" << m << ")";
    if (kind == EquationKind::RadialHeat) os << "(mu=" << mu << ")";
    return os.str();
}

namespace {
struct FamilyName {
    Family f;
    const char* name;
};
constexpr FamilyName kFamilyNames[] = {
    {Family::PlaneChirp, "plane-chirp"}, {Family::PointSrc, "point-src"},
    {Family::AiryKM, "airy-km"}, {Family::AiryBB, "airy-bb"},
    {Family::Bessel, "bessel"}, {Family::BesselGauss, "bessel-gauss"},
    {Family::StdHG, "std-hg"}, {Family::StdLG, "std-lg"},
    {Family::HeatPoly, "heat-poly"}, {Family::HeatAssoc, "heat-assoc"},
    {Family::FundHeat, "fund-heat"}, {Family::RadialHeatPoly, "radial-heat-poly"},
    {Family::RadialHeatAppell, "radial-heat-appell"}, {Family::FundRadialHeat, "fund-radial-heat"},
    {Family::Gauss, "gauss"},
};
}  // namespace

const char* family_name(Family f) {
    for (const auto& e : kFamilyNames)
        if (e.f == f) return e.name;
    return "?";
}

std::optional<Family> family_from_name(const std::string& s) {
    for (const auto& e : kFamilyNames)
        if (s == e.name) return e.f;
    return std::nullopt;
}

AnalyticField AnalyticField::plane_chirp(double lambda) { AnalyticField f; f.family = Family::PlaneChirp; f.lambda = lambda; return f; }
AnalyticField AnalyticField::point_src(double lambda) { AnalyticField f; f.family = Family::PointSrc; f.lambda = lambda; return f; }
AnalyticField AnalyticField::airy_km(double lambda) { AnalyticField f; f.family = Family::AiryKM; f.lambda = lambda; return f; }
AnalyticField AnalyticField::airy_bb(double lambda, double apod) {
    AnalyticField f; f.family = Family::AiryBB; f.lambda = lambda; f.apod = apod; return f;
}
AnalyticField AnalyticField::bessel(double lambda, int m) { AnalyticField f; f.family = Family::Bessel; f.lambda = lambda; f.m = m; return f; }
AnalyticField AnalyticField::bessel_gauss(double lambda, int m) { AnalyticField f; f.family = Family::BesselGauss; f.lambda = lambda; f.m = m; return f; }
AnalyticField AnalyticField::std_hg(int n) { AnalyticField f; f.family = Family::StdHG; f.n = n; return f; }
AnalyticField AnalyticField::std_lg(int n, int m) { AnalyticField f; f.family = Family::StdLG; f.n = n; f.m = m; return f; }
AnalyticField AnalyticField::heat_poly(int n) { AnalyticField f; f.family = Family::HeatPoly; f.n = n; return f; }
AnalyticField AnalyticField::heat_assoc(int n) { AnalyticField f; f.family = Family::HeatAssoc; f.n = n; return f; }
AnalyticField AnalyticField::fund_heat() { AnalyticField f; f.family = Family::FundHeat; return f; }
AnalyticField AnalyticField::radial_heat_poly(int n, double mu) { AnalyticField f; f.family = Family::RadialHeatPoly; f.n = n; f.mu = mu; return f; }
AnalyticField AnalyticField::radial_heat_appell(int n, double mu) { AnalyticField f; f.family = Family::RadialHeatAppell; f.n = n; f.mu = mu; return f; }
AnalyticField AnalyticField::fund_radial_heat(double mu) { AnalyticField f; f.family = Family::FundRadialHeat; f.mu = mu; return f; }
AnalyticField AnalyticField::gauss(double width, double center) {
    if (!(width > 0.0)) throw DomainError("gauss: width must be positive");
    AnalyticField f; f.family = Family::Gauss; f.width = width; f.center = center; return f;
}

Equation AnalyticField::equation() const {
    switch (family) {
        case Family::Bessel:
        case Family::BesselGauss:
        case Family::StdLG: return Equation::radial_pwe(m);
        case Family::HeatPoly:
        case Family::HeatAssoc:
        case Family::FundHeat: return Equation::heat();
        case Family::RadialHeatPoly:
        case Family::RadialHeatAppell:
        case Family::FundRadialHeat: return Equation::radial_heat(mu);
        default: return Equation::pwe();
    }
}

Geometry AnalyticField::geometry() const { return equation().geometry(); }

std::vector<std::pair<int, double>> heat_poly_coeffs(int n) {
    if (n < 0 || n > 32) throw DomainError("heat_poly_coeffs: n out of range");
    std::vector<std::pair<int, double>> out;
    const double nf = factorial(n);
    for (int j = 0; 2 * j <= n; ++j)
        out.emplace_back(n - 2 * j, nf / (std::ldexp(1.0, j) * factorial(j) * factorial(n - 2 * j)));
    return out;
}

double radial_heat_poly_value(int n, double mu, double r, double t) {
    // 2^n n! t^n L_n^a(-r^2/2t) = sum_k binom(n+a, n-k) 2^(n-k) n!/k! r^(2k) t^(n-k)
    const double a = mu / 2.0 - 1.0;
    const double nf = factorial(n);
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        double binom = 1.0;
        for (int i = k + 1; i <= n; ++i) binom *= (a + i);
        binom /= factorial(n - k);
        sum += binom * std::ldexp(1.0, n - k) * nf / factorial(k) * std::pow(r, 2 * k) * std::pow(t, n - k);
    }
    return sum;
}

namespace {

cplx heat_poly_value(int n, cplx x, cplx t) {
    cplx s = 0.0;
    for (auto [p, c] : heat_poly_coeffs(n)) s += c * ipow(x, p) * ipow(t, (n - p) / 2);
    return s;
}

double bessel_j_signed(int m, double x) {
    if (x >= 0.0) return bessel_j(m, x);
    return (m % 2 ? -1.0 : 1.0) * bessel_j(m, -x);
}

cplx eval_airy_bb(double lambda, double apod, double xi, double z) {
    if (apod == 0.0)
        return std::exp(-I * (z * z * z / 12.0 - z * xi / 2.0 + lambda * z / 2.0)) *
               airy_ai(xi - z * z / 4.0 - lambda);
    cplx xc = xi + I * apod * z;
    return std::exp(apod * xi + I * apod * apod * z / 2.0) *
           std::exp(-I * (z * z * z / 12.0 - z * xc / 2.0 + lambda * z / 2.0)) *
           airy_ai(xc - z * z / 4.0 - lambda);
}

cplx eval_point(const AnalyticField& f, double x, double z) {
    switch (f.family) {
        case Family::PlaneChirp:
            return std::exp(I * f.lambda * x - I * f.lambda * f.lambda * z / 2.0) / std::sqrt(2.0 * kPi);
        case Family::PointSrc: {
            if (z == 0.0) throw DomainError("point-src: singular at zeta = 0");
            double d = x - f.lambda;
            return std::exp(I * d * d / (2.0 * z)) / std::sqrt(2.0 * kPi * I * z);
        }
        case Family::AiryKM: {
            if (z == 0.0) return std::exp(I * (f.lambda * x - x * x * x / 3.0)) / std::sqrt(2.0 * kPi);
            double ph = 1.0 / (12.0 * z * z * z) + x * x / (2.0 * z) - x / (2.0 * z * z) + f.lambda / (2.0 * z);
            return std::exp(I * ph) / std::sqrt(I * z) * airy_ai(x / z - 1.0 / (4.0 * z * z) - f.lambda);
        }
        case Family::AiryBB: return eval_airy_bb(f.lambda, f.apod, x, z);
        case Family::Bessel:
            return std::exp(-I * f.lambda * f.lambda * z / 2.0) * bessel_j_signed(f.m, f.lambda * x);
        case Family::BesselGauss: {
            if (z == 0.0) throw DomainError("bessel-gauss: singular at zeta = 0");
            return ipow(-I, f.m + 1) / z * std::exp(I * (f.lambda * f.lambda + x * x) / (2.0 * z)) *
                   bessel_j_signed(f.m, f.lambda * x / z);
        }
        case Family::StdHG: {
            cplx mu{1.0, z};
            double amu = std::abs(mu);
            double norm = std::ldexp(1.0, f.n) * factorial(f.n) * std::sqrt(kPi);
            return 1.0 / std::sqrt(norm * mu) * std::exp(-I * double(f.n) * std::arg(mu)) *
                   std::exp(-x * x / (2.0 * mu)) * hermite(f.n, x / amu);
        }
        case Family::StdLG: {
            cplx mu{1.0, z};
            double amu = std::abs(mu);
            double norm = std::sqrt(2.0 * factorial(f.n) / factorial(f.n + f.m));
            return norm * ipow(mu, -(f.m + 1)) * ipow(std::conj(mu) / mu, f.n) * std::pow(x, f.m) *
                   std::exp(-x * x / (2.0 * mu)) * laguerre(f.n, f.m, x * x / (amu * amu));
        }
        case Family::HeatPoly: return heat_poly_value(f.n, x, z);
        case Family::HeatAssoc: {
            if (z == 0.0) throw DomainError("heat-assoc: singular at t = 0");
            cplx s = std::exp(-x * x / (2.0 * z)) / std::sqrt(cplx(2.0 * kPi * z));
            return s * heat_poly_value(f.n, x / z, -1.0 / z);
        }
        case Family::FundHeat: {
            if (!(z > 0.0)) throw DomainError("fund-heat: t must be positive");
            return std::exp(-x * x / (2.0 * z)) / std::sqrt(2.0 * kPi * z);
        }
        case Family::RadialHeatPoly: return radial_heat_poly_value(f.n, f.mu, x, z);
        case Family::RadialHeatAppell: {
            if (z == 0.0) throw DomainError("radial-heat-appell: singular at t = 0");
            cplx s = std::exp(-x * x / (2.0 * z)) * std::pow(cplx(2.0 * kPi * z), -f.mu / 2.0);
            return s * radial_heat_poly_value(f.n, f.mu, x / z, -1.0 / z);
        }
        case Family::FundRadialHeat: {
            if (!(z > 0.0)) throw DomainError("fund-radial-heat: t must be positive");
            return std::exp(-x * x / (2.0 * z)) * std::pow(2.0 * kPi * z, -f.mu / 2.0);
        }
        case Family::Gauss: {
            double w2 = f.width * f.width;
            double d = x - f.center;
            return std::exp(-d * d / (2.0 * (w2 + I * z))) / std::sqrt(1.0 + I * z / w2);
        }
    }
    throw DomainError("eval: unknown family");
}

}  // namespace

cplx eval(const AnalyticField& f, double coord, double evol) {
    if (f.equation().is_radial() && coord < 0.0) {
        int sign = (f.geometry().parity().value_or(1) < 0) ? -1 : 1;
        return double(sign) * eval_point(f, -coord, evol);
    }
    return eval_point(f, coord, evol);
}

namespace {
void check_grid_geometry(const Geometry& g, const Grid1D& grid) {
    if (g.is_radial() != (grid.kind == GridKind::HalfLine))
        throw GeometryMismatch("sample: grid kind does not match the field geometry");
}
}  // namespace

SampledField sample(const AnalyticField& f, const Grid1D& grid, double evol) {
    grid.validate();
    check_grid_geometry(f.geometry(), grid);
    SampledField out{grid, {}, f.geometry(), evol, {}};
    out.values.resize(grid.count);
    for (int i = 0; i < grid.count; ++i) out.values[i] = eval(f, grid.at(i), evol);
    return out;
}

FieldExpr to_expr(const AnalyticField& f) {
    FieldExpr e;
    e.equation = f.equation();
    e.fn = [f](double x, double t) { return eval(f, x, t); };
    auto from = [](AnalyticField g, cplx factor = 1.0) {
        return std::function<cplx(double, double)>([g, factor](double x, double t) { return factor * eval(g, x, t); });
    };
    switch (f.family) {
        case Family::PlaneChirp: e.dual = from(AnalyticField::point_src(f.lambda)); break;
        case Family::PointSrc: e.dual = from(AnalyticField::plane_chirp(-f.lambda)); break;
        case Family::AiryKM: e.dual = from(AnalyticField::airy_bb(f.lambda)); break;
        case Family::AiryBB:
            if (f.apod == 0.0) {
                AnalyticField km = AnalyticField::airy_km(f.lambda);
                e.dual = [km](double x, double t) { return eval(km, -x, t); };
            }
            break;
        case Family::StdHG: e.dual = from(f, ipow(-I, f.n)); break;
        case Family::StdLG: e.dual = from(f, (f.n % 2) ? -1.0 : 1.0); break;
        case Family::Bessel: e.dual = from(AnalyticField::bessel_gauss(f.lambda, f.m)); break;
        case Family::BesselGauss: e.dual = from(AnalyticField::bessel(f.lambda, f.m)); break;
        case Family::Gauss: {
            // source transform w exp(-i k c) exp(-k^2 w^2 / 2), propagated with a tilt
            AnalyticField g = AnalyticField::gauss(1.0 / f.width, 0.0);
            double c = f.center, w = f.width;
            e.dual = [g, c, w](double x, double t) {
                return w * std::exp(-I * c * x - I * c * c * t / 2.0) * eval(g, x + c * t, t);
            };
            break;
        }
        default: break;
    }
    return e;
}

SampledField sample(const FieldExpr& f, const Grid1D& grid, double evol) {
    grid.validate();
    Geometry g = f.equation.geometry();
    check_grid_geometry(g, grid);
    SampledField out{grid, {}, g, evol, {}};
    out.values.resize(grid.count);
    for (int i = 0; i < grid.count; ++i) out.values[i] = f(grid.at(i), evol);
    return out;
}

namespace {
std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace

void write_field_csv(std::ostream& os, const SampledField& f) {
    nlohmann::json h;
    h["kind"] = f.grid.kind == GridKind::FullLine ? "FullLine" : "HalfLine";
    h["start"] = f.grid.start;
    h["step"] = f.grid.step;
    h["count"] = f.grid.count;
    h["geometry"] = f.geometry.to_json();
    h["evol"] = f.evol;
    os << "# canonica-field v1 " << h.dump() << "\n";
    for (int i = 0; i < f.grid.count; ++i)
        os << fmt17(f.grid.at(i)) << ',' << fmt17(f.values[i].real()) << ',' << fmt17(f.values[i].imag()) << "\n";
}

SampledField read_field_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("field csv: empty input (line 1)");
    const std::string magic = "# canonica-field v1 ";
    if (line.rfind(magic, 0) != 0) throw ParseError("field csv: bad header (line 1)");
    nlohmann::json h;
    try {
        h = nlohmann::json::parse(line.substr(magic.size()));
    } catch (const std::exception& e) {
        throw ParseError(std::string("field csv: header json (line 1): ") + e.what());
    }
    SampledField f;
    try {
        std::string kind = h.at("kind").get<std::string>();
        if (kind != "FullLine" && kind != "HalfLine") throw ParseError("field csv: bad grid kind (line 1)");
        f.grid.kind = kind == "FullLine" ? GridKind::FullLine : GridKind::HalfLine;
        f.grid.start = h.at("start").get<double>();
        f.grid.step = h.at("step").get<double>();
        f.grid.count = h.at("count").get<int>();
        f.geometry = Geometry::from_json(h.at("geometry"));
        f.evol = h.at("evol").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("field csv: header field (line 1): ") + e.what());
    }
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        double x, re, im;
        char c1, c2;
        std::istringstream ls(line);
        if (!(ls >> x >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',')
            throw ParseError("field csv: malformed row (line " + std::to_string(lineno) + ")");
        f.values.emplace_back(re, im);
    }
    if (static_cast<int>(f.values.size()) != f.grid.count)
        throw ParseError("field csv: row count differs from header count");
    f.validate();
    return f;
}

}  // namespace canonica
