#include "canonica/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "canonica/errors.hpp"
#include "canonica/quadrature.hpp"
#include "canonica/specfun.hpp"

namespace canonica {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I{0.0, 1.0};

// Kernel value k * exp(e); the split keeps growing Bessel-I kernels finite.
struct KVal {
    cplx k;
    double e = 0.0;
};

struct Kernel {
    std::function<KVal(double, double)> eval;  // (output point, integration point)
    std::function<double(double)> rate;        // phase / peak rate in the integration variable
    bool growing = false;
    Geometry out_geometry;
};

// z^-nu J_nu(z), z >= 0
double jred(double nu, double z) {
    if (z < 1e-3) {
        double s = z * z / 4.0;
        double t0 = 1.0 / std::tgamma(nu + 1.0);
        return std::pow(2.0, -nu) * t0 * (1.0 - s / (nu + 1.0) + s * s / (2.0 * (nu + 1.0) * (nu + 2.0)));
    }
    return bessel_j(nu, z) / std::pow(z, nu);
}

// exp(-z) z^-nu I_nu(z), z >= 0
double ired_scaled(double nu, double z) {
    if (z < 1e-3) {
        double s = z * z / 4.0;
        double t0 = 1.0 / std::tgamma(nu + 1.0);
        return std::exp(-z) * std::pow(2.0, -nu) * t0 *
               (1.0 + s / (nu + 1.0) + s * s / (2.0 * (nu + 1.0) * (nu + 2.0)));
    }
    return bessel_i_scaled(nu, z) / std::pow(z, nu);
}

bool expect_radial(const TransformSpec& s) { return is_radial(s); }

void check_geometry(const SampledField& f, const Grid1D& out, bool radial) {
    f.validate();
    out.validate();
    if (f.geometry.is_radial() != radial)
        throw GeometryMismatch(radial ? "transform expects a radial field" : "transform expects a linear field");
    if ((out.kind == GridKind::HalfLine) != radial)
        throw GeometryMismatch("output grid kind does not match the transform");
}

double default_apod_width(const Grid1D& g) {
    double span = g.end() - (g.kind == GridKind::HalfLine ? 0.0 : g.start);
    return span / 4.0;
}

SampledField prepare_input(const SampledField& f, const QuadratureConfig& cfg) {
    SampledField g = f;
    if (cfg.apodization) {
        double w = *cfg.apodization > 0.0 ? *cfg.apodization : default_apod_width(f.grid);
        double c = f.grid.kind == GridKind::HalfLine ? 0.0 : 0.5 * (f.grid.start + f.grid.end());
        for (int i = 0; i < g.grid.count; ++i) {
            double d = (g.grid.at(i) - c) / w;
            g.values[i] *= std::exp(-0.5 * d * d);
        }
    }
    double mx = 0.0;
    for (auto& v : g.values) mx = std::max(mx, std::abs(v));
    double edge = std::abs(g.values.back());
    bool lower_edge = g.grid.kind == GridKind::FullLine || g.grid.start > 0.0;
    if (lower_edge) edge = std::max(edge, std::abs(g.values.front()));
    if (mx > 0.0 && edge > 1e-6 * mx) {
        std::ostringstream os;
        os << "TruncationWarning: edge magnitude " << edge / mx << " of peak";
        g.notes.push_back(os.str());
    }
    return g;
}

SampledField make_output(const SampledField& in, const Grid1D& out, const Geometry& geom) {
    SampledField r{out, std::vector<cplx>(out.count), geom, in.evol, in.notes};
    return r;
}

void check_divergence(const SampledField& in, const Grid1D& out, const Kernel& k, double lo, double hi) {
    // worst case is the output point farthest from the origin
    double x = std::fabs(out.end()) >= std::fabs(out.start) ? out.end() : out.start;
    double mx = 0.0, edge = 0.0;
    auto mag = [&](int i) {
        double y = in.grid.at(i);
        if (y < lo - 1e-12 || y > hi + 1e-12) return 0.0;
        cplx v = in.values[i];
        if (v == 0.0) return 0.0;
        KVal kv = k.eval(x, y);
        return std::exp(kv.e + std::log(std::abs(v))) * std::abs(kv.k);
    };
    std::vector<double> m(in.grid.count);
    for (int i = 0; i < in.grid.count; ++i) {
        m[i] = mag(i);
        if (!std::isfinite(m[i])) throw DivergenceRisk("integrand overflows; the field does not dominate the kernel growth");
        mx = std::max(mx, m[i]);
    }
    edge = m.back();
    if (in.grid.kind == GridKind::FullLine) edge = std::max(edge, m.front());
    if (mx > 0.0 && edge > 1e-10 * mx)
        throw DivergenceRisk("integrand does not decay at the grid edge; kernel growth dominates the field");
}

SampledField integrate(const SampledField& in, const Grid1D& out, const Kernel& k, const QuadratureConfig& cfg,
                       bool radial_domain) {
    double lo = in.grid.start, hi = in.grid.end();
    if (radial_domain) lo = std::max(lo, 0.0);
    lo = std::max(lo, -cfg.truncation_radius);
    hi = std::min(hi, cfg.truncation_radius);
    if (k.growing) check_divergence(in, out, k, lo, hi);
    SampledField res = make_output(in, out, k.out_geometry);
    if (!(hi > lo)) return res;
    // one panel layout for all output points, so input interpolation is shared
    const QuadRule& gl = gauss_legendre(cfg.nodes_per_panel);
    const double span = hi - lo;
    const double budget = cfg.nodes_per_panel * kPi / 16.0;
    double need = std::max<double>(cfg.panels, span / (16.0 * in.grid.step));
    for (int i = 0; i < out.count; ++i) need = std::max(need, k.rate(out.at(i)) * span / budget);
    const int panels = static_cast<int>(std::min(std::ceil(need), 20000.0));
    const double w = span / panels;
    std::vector<double> ys, ws;
    std::vector<cplx> fs;
    {
        Interpolator interp(in);
        for (int p = 0; p < panels; ++p) {
            double a = lo + p * w;
            for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
                double y = a + 0.5 * w * (gl.nodes[q] + 1.0);
                cplx f = interp(y);
                if (f == 0.0) continue;
                ys.push_back(y);
                ws.push_back(0.5 * w * gl.weights[q]);
                fs.push_back(f);
            }
        }
    }
    std::vector<double> logf(fs.size());
    std::vector<cplx> unit(fs.size());
    for (std::size_t q = 0; q < fs.size(); ++q) {
        logf[q] = std::log(std::abs(fs[q]));
        unit[q] = fs[q] / std::abs(fs[q]);
    }
    parallel_for(out.count, [&](int i) {
        double x = out.at(i);
        cplx acc = 0.0;
        for (std::size_t q = 0; q < ys.size(); ++q) {
            KVal kv = k.eval(x, ys[q]);
            cplx term = kv.e == 0.0 ? kv.k * fs[q] : std::exp(kv.e + logf[q]) * kv.k * unit[q];
            acc += ws[q] * term;
        }
        res.values[i] = acc;
    });
    return res;
}

SampledField resample(const SampledField& in, const Grid1D& out, cplx factor = 1.0) {
    Interpolator interp(in);
    SampledField r = make_output(in, out, in.geometry);
    for (int i = 0; i < out.count; ++i) r.values[i] = factor * interp(out.at(i));
    return r;
}

void scale(SampledField& f, cplx c) {
    for (auto& v : f.values) v *= c;
}

void check_integrability(const SympMat2& m) {
    if (is_real(m)) return;
    if (std::abs(m.a) < 1e-14) {
        if (std::fabs(m.b.imag()) > 1e-14) throw IntegrabilityViolation("A = 0 requires a real B");
        return;
    }
    if ((m.a / m.b).imag() < -1e-12) throw IntegrabilityViolation("Im(A/B) < 0: kernel grows at infinity");
}

Kernel linear_kernel(const SympMat2& m, double r_in) {
    cplx pref = 1.0 / std::sqrt(2.0 * kPi * I * m.b);
    cplx ab = m.a / m.b, db = m.d / m.b, ib = 1.0 / m.b;
    Kernel k;
    k.eval = [=](double x, double y) {
        cplx ex = I * (ab * y * y + db * x * x - 2.0 * ib * x * y) / 2.0;
        return KVal{pref * std::exp(cplx(0.0, ex.imag())), ex.real()};
    };
    double gauss = std::sqrt(std::max(0.0, ab.imag()));
    k.rate = [=](double x) { return std::abs(ab) * r_in + std::abs(ib * x) + 8.0 * gauss; };
    k.growing = false;
    k.out_geometry = Geometry::linear();
    return k;
}

double max_abs_coord(const Grid1D& g) { return std::max(std::fabs(g.start), std::fabs(g.end())); }

SampledField chirp_fft_linear(const SympMat2& m, const SampledField& in, const Grid1D& out,
                              const QuadratureConfig& cfg) {
    if (!is_real(m)) throw DomainError("ChirpFFT requires a real-phase kernel");
    const double a = m.a.real(), b = m.b.real(), d = m.d.real();
    const int n = in.grid.count;
    const double hi = in.grid.step, ho = out.step, y0 = in.grid.start, x0 = out.start;
    std::vector<cplx> av(n);
    for (int j = 0; j < n; ++j) {
        double y = in.grid.at(j);
        double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
        if (std::fabs(y) > cfg.truncation_radius) wj = 0.0;
        av[j] = wj * hi * in.values[j] * std::polar(1.0, a * y * y / (2.0 * b) - x0 * y / b);
    }
    auto s = chirp_z(av, out.count, std::polar(1.0, -ho * hi / b));
    cplx pref = 1.0 / std::sqrt(2.0 * kPi * I * cplx(b));
    SampledField res = make_output(in, out, Geometry::linear());
    for (int k = 0; k < out.count; ++k) {
        double x = out.at(k);
        res.values[k] = pref * std::polar(1.0, d * x * x / (2.0 * b) - k * ho * y0 / b) * s[k];
    }
    return res;
}

SampledField linear_ct(const SympMat2& m, const SampledField& in, const Grid1D& out, const QuadratureConfig& cfg,
                       bool check = true) {
    if (!is_unimodular(m, 1e-10)) throw DomainError("matrix is not unimodular");
    if (std::abs(m.b) < 1e-10) return geometric(SympMat2{m.a, 0.0, m.c, 1.0 / m.a}, in, out);
    if (check) check_integrability(m);
    if (cfg.scheme == Scheme::ChirpFFT) return chirp_fft_linear(m, in, out, cfg);
    Kernel k = linear_kernel(m, max_abs_coord(in.grid));
    if (!check) k.growing = true;
    return integrate(in, out, k, cfg, false);
}

SampledField radial_geometric(const SympMat2& m, double n_dim, const SampledField& in, const Grid1D& out,
                              const Geometry& geom) {
    if (std::fabs(m.a.imag()) > 1e-14) throw DomainError("geometric transform needs a real A");
    double a = m.a.real();
    Interpolator interp(in);
    SampledField r = make_output(in, out, geom);
    cplx pref = std::pow(cplx(a), -n_dim / 2.0);
    for (int i = 0; i < out.count; ++i) {
        double x = out.at(i);
        r.values[i] = pref * std::exp(I * m.c * x * x / (2.0 * a)) * interp(x / a);
    }
    return r;
}

SampledField radial_ct(const SympMat2& m, double n_dim, int m_idx, const SampledField& in, const Grid1D& out,
                       const QuadratureConfig& cfg) {
    if (!is_unimodular(m, 1e-10)) throw DomainError("matrix is not unimodular");
    Geometry geom = n_dim == 2.0 ? Geometry::radial(m_idx) : Geometry::radial_dim(n_dim, m_idx);
    if (std::abs(m.b) < 1e-10) return radial_geometric(m, n_dim, in, out, geom);
    bool real_b = std::fabs(m.b.imag()) <= 1e-14 * std::abs(m.b);
    bool imag_b = std::fabs(m.b.real()) <= 1e-14 * std::abs(m.b);
    if (!real_b && !imag_b) throw DomainError("radial transform needs a real or imaginary B");
    check_integrability(m);
    const double nu = n_dim / 2.0 + m_idx - 1.0;
    if (nu < -0.5) throw DomainError("radial transform: Bessel order below -1/2");
    const cplx pref = std::pow(-I, m_idx + n_dim / 2.0) / m.b * std::pow(1.0 / m.b, nu);
    const cplx ab = m.a / m.b, db = m.d / m.b;
    const double babs = std::abs(m.b);
    Kernel k;
    k.eval = [=](double x, double y) {
        cplx ex = I * (ab * y * y + db * x * x) / 2.0;
        double z = x * y / babs;
        cplx base = pref * std::pow(x * y, double(m_idx)) * std::pow(y, n_dim - 1.0);
        if (real_b) return KVal{base * jred(nu, z) * std::exp(cplx(0.0, ex.imag())), ex.real()};
        // J_nu(i y) / (i y)^nu = I_nu(y) / y^nu
        return KVal{base * ired_scaled(nu, z) * std::exp(cplx(0.0, ex.imag())), ex.real() + z};
    };
    double r_in = in.grid.end();
    k.rate = [=](double x) { return std::abs(ab) * r_in + std::fabs(x) / babs; };
    k.growing = imag_b;
    k.out_geometry = geom;
    return integrate(in, out, k, cfg, true);
}

double phi_of(double alpha) { return reduce_alpha(alpha) * kPi / 2.0; }

Geometry type_geometry(double nu, double nu_prime) { return Geometry::radial_type(nu, nu_prime); }

SampledField hankel_type_impl(const SampledField& in, int kind, double nu, double nu_prime, const Grid1D& out,
                              const QuadratureConfig& cfg, bool laplace) {
    if (kind != 1 && kind != 2) throw DomainError("transform kind must be 1 or 2");
    if (nu < -0.5) throw DomainError("Bessel order below -1/2");
    check_geometry(in, out, true);
    SampledField src = prepare_input(in, cfg);
    const double po = kind == 1 ? 1.0 + nu_prime + nu : nu - nu_prime;  // output power
    const double pi_ = kind == 1 ? nu - nu_prime : 1.0 + nu_prime + nu;  // integration power
    // (-1)^(1+nu) on the lower branch
    const cplx sign = laplace ? std::exp(-I * kPi * (1.0 + nu)) : cplx(1.0);
    Kernel k;
    if (laplace) {
        k.eval = [=](double x, double y) {
            double z = x * y;
            return KVal{sign * std::pow(x, po) * std::pow(y, pi_) * ired_scaled(nu, z), z};
        };
        k.rate = [=](double x) { return std::fabs(x); };
        k.growing = true;
    } else {
        k.eval = [=](double x, double y) { return KVal{std::pow(x, po) * std::pow(y, pi_) * jred(nu, x * y), 0.0}; };
        k.rate = [=](double x) { return std::fabs(x); };
    }
    k.out_geometry = type_geometry(nu, nu_prime);
    return integrate(src, out, k, cfg, true);
}

}  // namespace

void QuadratureConfig::validate() const {
    if (panels < 1 || nodes_per_panel < 1) throw DomainError("quadrature counts must be positive");
    if (!(truncation_radius > 0.0)) throw DomainError("truncation radius must be positive");
}

bool is_radial(const TransformSpec& s) {
    return std::holds_alternative<RadialCT>(s) || std::holds_alternative<Hankel>(s) ||
           std::holds_alternative<FrHankel>(s) || std::holds_alternative<HankelType>(s) ||
           std::holds_alternative<RadialLaplace>(s) || std::holds_alternative<BesselExp>(s) ||
           std::holds_alternative<RadialHeatProp>(s) || std::holds_alternative<BarutGirardello>(s);
}

SampledField geometric(const SympMat2& m, const SampledField& field, const Grid1D& out_grid) {
    if (std::abs(m.b) > 1e-10) throw DomainError("geometric transform needs b = 0");
    if (std::abs(m.a) < 1e-14) throw DomainError("geometric transform needs a != 0");
    check_geometry(field, out_grid, false);
    if (std::fabs(m.a.imag()) > 1e-14) throw DomainError("geometric transform needs a real A");
    double a = m.a.real();
    Interpolator interp(field);
    SampledField r = make_output(field, out_grid, Geometry::linear());
    cplx pref = 1.0 / std::sqrt(cplx(a));
    for (int i = 0; i < out_grid.count; ++i) {
        double x = out_grid.at(i);
        r.values[i] = pref * std::exp(I * m.c * x * x / (2.0 * a)) * interp(x / a);
    }
    return r;
}

SampledField poisson_propagate(const SampledField& field, double t, const Grid1D& out_grid,
                               const QuadratureConfig& cfg) {
    if (!(t > 0.0)) throw DomainError("Poisson propagation needs t > 0");
    check_geometry(field, out_grid, false);
    SampledField src = prepare_input(field, cfg);
    const double pref = 1.0 / std::sqrt(2.0 * kPi * t);
    Kernel k;
    k.eval = [=](double x, double y) { return KVal{pref, -(x - y) * (x - y) / (2.0 * t)}; };
    k.rate = [=](double) { return 8.0 / std::sqrt(t); };
    k.growing = true;
    k.out_geometry = Geometry::linear();
    SampledField r = integrate(src, out_grid, k, cfg, false);
    r.evol = field.evol + t;
    return r;
}

SampledField poisson_propagate(const std::function<cplx(double)>& f, double t, const Grid1D& out_grid, int nodes) {
    if (!(t > 0.0)) throw DomainError("Poisson propagation needs t > 0");
    out_grid.validate();
    QuadRule gh = gauss_hermite(nodes);
    SampledField r{out_grid, std::vector<cplx>(out_grid.count), Geometry::linear(), t, {}};
    const double s = std::sqrt(2.0 * t);
    for (int i = 0; i < out_grid.count; ++i) {
        double x = out_grid.at(i);
        cplx acc = 0.0;
        for (int q = 0; q < nodes; ++q) acc += gh.weights[q] * f(x + s * gh.nodes[q]);
        r.values[i] = acc / std::sqrt(kPi);
    }
    return r;
}

SampledField hankel_type(const SampledField& field, int kind, double nu, double nu_prime, const Grid1D& out_grid,
                         const QuadratureConfig& cfg) {
    return hankel_type_impl(field, kind, nu, nu_prime, out_grid, cfg, false);
}

SampledField radial_laplace(const SampledField& field, int kind, double nu, double nu_prime,
                            const Grid1D& out_grid, const QuadratureConfig& cfg) {
    return hankel_type_impl(field, kind, nu, nu_prime, out_grid, cfg, true);
}

SampledField bessel_exp(const SampledField& field, double beta, double nu, double nu_prime, const Grid1D& out_grid,
                        const QuadratureConfig& cfg) {
    if (!(beta > 0.0)) throw DomainError("exponential operator needs beta > 0");
    if (nu < -0.5) throw DomainError("Bessel order below -1/2");
    check_geometry(field, out_grid, true);
    SampledField src = prepare_input(field, cfg);
    const double po = 1.0 + nu_prime + nu, pi_ = nu - nu_prime;
    const double pref = std::pow(2.0 * beta, -nu) / (2.0 * beta);
    Kernel k;
    k.eval = [=](double x, double y) {
        double z = x * y / (2.0 * beta);
        return KVal{pref * std::pow(x, po) * std::pow(y, pi_) * ired_scaled(nu, z), -(x - y) * (x - y) / (4.0 * beta)};
    };
    k.rate = [=](double) { return 8.0 / std::sqrt(2.0 * beta); };
    k.out_geometry = type_geometry(nu, nu_prime);
    return integrate(src, out_grid, k, cfg, true);
}

namespace {
SampledField bessel_exp_half_i(const SampledField& field, double nu, double nu_prime, const Grid1D& out_grid,
                               const QuadratureConfig& cfg) {
    if (nu < -0.5) throw DomainError("Bessel order below -1/2");
    check_geometry(field, out_grid, true);
    SampledField src = prepare_input(field, cfg);
    const double po = 1.0 + nu_prime + nu, pi_ = nu - nu_prime;
    const cplx pref = -I * std::exp(-I * kPi * nu / 2.0);
    Kernel k;
    k.eval = [=](double x, double y) {
        return KVal{pref * std::pow(x, po) * std::pow(y, pi_) * std::exp(I * (x * x + y * y) / 2.0) * jred(nu, x * y),
                    0.0};
    };
    double r_in = field.grid.end();
    k.rate = [=](double x) { return r_in + std::fabs(x); };
    k.out_geometry = type_geometry(nu, nu_prime);
    return integrate(src, out_grid, k, cfg, true);
}
}  // namespace

SampledField radial_heat_propagate(const SampledField& field, double t, double mu, const Grid1D& out_grid,
                                   const QuadratureConfig& cfg) {
    if (!(t > 0.0)) throw DomainError("radial heat propagation needs t > 0");
    if (!(mu > 1.0)) throw DomainError("radial heat propagation needs mu > 1");
    check_geometry(field, out_grid, true);
    SampledField src = prepare_input(field, cfg);
    const double nu = mu / 2.0 - 1.0;
    Kernel k;
    k.eval = [=](double x, double y) {
        double z = x * y / t;
        return KVal{std::pow(y / t, nu) * std::pow(y, mu / 2.0) / t * ired_scaled(nu, z), -(x - y) * (x - y) / (2.0 * t)};
    };
    k.rate = [=](double) { return 8.0 / std::sqrt(t); };
    k.out_geometry = Geometry::radial_dim(mu, 0);
    SampledField r = integrate(src, out_grid, k, cfg, true);
    r.evol = field.evol + t;
    return r;
}

SampledField barut_girardello(const SampledField& field, double n_dim, int m_idx, const Grid1D& out_grid,
                              const QuadratureConfig& cfg) {
    const double nu = n_dim / 2.0 + m_idx - 1.0;
    if (nu < -0.5) throw DomainError("Bessel order below -1/2");
    check_geometry(field, out_grid, true);
    SampledField src = prepare_input(field, cfg);
    const double pref = std::sqrt(2.0) * std::pow(2.0, nu / 2.0);
    Kernel k;
    k.eval = [=](double x, double y) {
        double z = std::sqrt(2.0) * x * y;
        return KVal{pref * std::pow(x * y, double(m_idx)) * std::pow(y, n_dim - 1.0) * ired_scaled(nu, z),
                    -(x * x + y * y) / 2.0 + z};
    };
    k.rate = [=](double) { return 8.0; };
    k.growing = true;
    k.out_geometry = Geometry::radial_dim(n_dim, m_idx);
    return integrate(src, out_grid, k, cfg, true);
}

SampledField apply(const TransformSpec& spec, const SampledField& field, const Grid1D& out_grid,
                   const QuadratureConfig& cfg) {
    cfg.validate();
    check_geometry(field, out_grid, expect_radial(spec));
    return std::visit(
        [&](const auto& s) -> SampledField {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, LinearCT>) {
                return linear_ct(s.m, prepare_input(field, cfg), out_grid, cfg);
            } else if constexpr (std::is_same_v<T, Geometric>) {
                return geometric(s.m, field, out_grid);
            } else if constexpr (std::is_same_v<T, FresnelProp>) {
                if (s.zeta == 0.0) return resample(field, out_grid);
                SampledField r = linear_ct(mat_free(s.zeta), prepare_input(field, cfg), out_grid, cfg);
                r.evol = field.evol + s.zeta;
                return r;
            } else if constexpr (std::is_same_v<T, FrFT>) {
                double phi = phi_of(s.alpha);
                if (std::fabs(std::sin(phi)) < 1e-10) {
                    if (std::cos(phi) > 0) return resample(field, out_grid);
                    SampledField r = resample(field, out_grid);
                    Interpolator ip(field);
                    for (int i = 0; i < out_grid.count; ++i) r.values[i] = ip(-out_grid.at(i));
                    return r;
                }
                SampledField r = linear_ct(mat_fourier(s.alpha), prepare_input(field, cfg), out_grid, cfg);
                scale(r, std::exp(I * phi / 2.0));
                return r;
            } else if constexpr (std::is_same_v<T, FrLaplace>) {
                double phi = phi_of(s.alpha);
                if (std::fabs(std::sin(phi)) < 1e-10) {
                    if (std::cos(phi) > 0) return resample(field, out_grid);
                    SampledField r = resample(field, out_grid);
                    Interpolator ip(field);
                    for (int i = 0; i < out_grid.count; ++i) r.values[i] = ip(-out_grid.at(i));
                    return r;
                }
                QuadratureConfig c = cfg;
                c.scheme = Scheme::GaussLegendreComposite;
                SampledField r = linear_ct(mat_laplace(s.alpha), prepare_input(field, cfg), out_grid, c, false);
                scale(r, std::exp(I * phi / 2.0));
                return r;
            } else if constexpr (std::is_same_v<T, PoissonProp>) {
                return poisson_propagate(field, s.t, out_grid, cfg);
            } else if constexpr (std::is_same_v<T, RadialCT>) {
                return radial_ct(s.m, s.n_dim, s.m_idx, prepare_input(field, cfg), out_grid, cfg);
            } else if constexpr (std::is_same_v<T, Hankel>) {
                if (s.m < 0) throw DomainError("Hankel order must be nonnegative");
                SampledField src = prepare_input(field, cfg);
                const int m = s.m;
                Kernel k;
                k.eval = [=](double x, double y) {
                    return KVal{std::pow(x * y, double(m)) * y * jred(m, x * y), 0.0};
                };
                k.rate = [](double x) { return std::fabs(x); };
                k.out_geometry = Geometry::radial(m);
                return integrate(src, out_grid, k, cfg, true);
            } else if constexpr (std::is_same_v<T, FrHankel>) {
                double phi = phi_of(s.alpha);
                if (std::fabs(std::sin(phi)) < 1e-10) {
                    SampledField r = resample(field, out_grid);
                    r.geometry = Geometry::radial(s.m);
                    return r;
                }
                SampledField r = radial_ct(mat_fourier(s.alpha), 2.0, s.m, prepare_input(field, cfg), out_grid, cfg);
                scale(r, std::exp(I * double(s.m + 1) * phi));
                return r;
            } else if constexpr (std::is_same_v<T, HankelType>) {
                return hankel_type(field, s.kind, s.nu, s.nu_prime, out_grid, cfg);
            } else if constexpr (std::is_same_v<T, RadialLaplace>) {
                return radial_laplace(field, s.kind, s.nu, s.nu_prime, out_grid, cfg);
            } else if constexpr (std::is_same_v<T, BesselExp>) {
                if (s.imaginary_half) return bessel_exp_half_i(field, s.nu, s.nu_prime, out_grid, cfg);
                return bessel_exp(field, s.beta, s.nu, s.nu_prime, out_grid, cfg);
            } else if constexpr (std::is_same_v<T, RadialHeatProp>) {
                return radial_heat_propagate(field, s.t, s.mu, out_grid, cfg);
            } else {
                return barut_girardello(field, s.n_dim, s.m_idx, out_grid, cfg);
            }
        },
        spec);
}

std::string transform_name(const TransformSpec& s) {
    static const char* names[] = {"LinearCT",  "Geometric",  "FresnelProp", "FrFT",          "FrLaplace",
                                  "PoissonProp", "RadialCT", "Hankel",      "FrHankel",      "HankelType",
                                  "RadialLaplace", "BesselExp", "RadialHeatProp", "BarutGirardello"};
    return names[s.index()];
}

nlohmann::json to_json(const TransformSpec& spec) {
    nlohmann::json j;
    j["type"] = transform_name(spec);
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, LinearCT> || std::is_same_v<T, Geometric>) {
                j["matrix"] = to_json(s.m);
            } else if constexpr (std::is_same_v<T, FresnelProp>) {
                j["zeta"] = s.zeta;
            } else if constexpr (std::is_same_v<T, FrFT> || std::is_same_v<T, FrLaplace>) {
                j["alpha"] = s.alpha;
            } else if constexpr (std::is_same_v<T, PoissonProp>) {
                j["t"] = s.t;
            } else if constexpr (std::is_same_v<T, RadialCT>) {
                j["matrix"] = to_json(s.m);
                j["n_dim"] = s.n_dim;
                j["m"] = s.m_idx;
            } else if constexpr (std::is_same_v<T, Hankel>) {
                j["m"] = s.m;
            } else if constexpr (std::is_same_v<T, FrHankel>) {
                j["m"] = s.m;
                j["alpha"] = s.alpha;
            } else if constexpr (std::is_same_v<T, HankelType> || std::is_same_v<T, RadialLaplace>) {
                j["kind"] = s.kind;
                j["nu"] = s.nu;
                j["nu_prime"] = s.nu_prime;
            } else if constexpr (std::is_same_v<T, BesselExp>) {
                if (s.imaginary_half)
                    j["beta"] = "i/2";
                else
                    j["beta"] = s.beta;
                j["nu"] = s.nu;
                j["nu_prime"] = s.nu_prime;
            } else if constexpr (std::is_same_v<T, RadialHeatProp>) {
                j["t"] = s.t;
                j["mu"] = s.mu;
            } else {
                j["n_dim"] = s.n_dim;
                j["m"] = s.m_idx;
            }
        },
        spec);
    return j;
}

TransformSpec transform_from_json(const nlohmann::json& j) {
    try {
        std::string t = j.at("type").get<std::string>();
        if (t == "LinearCT") return LinearCT{matrix_from_json(j.at("matrix"))};
        if (t == "Geometric") return Geometric{matrix_from_json(j.at("matrix"))};
        if (t == "FresnelProp") return FresnelProp{j.at("zeta").get<double>()};
        if (t == "FrFT") return FrFT{j.at("alpha").get<double>()};
        if (t == "FrLaplace") return FrLaplace{j.at("alpha").get<double>()};
        if (t == "PoissonProp") return PoissonProp{j.at("t").get<double>()};
        if (t == "RadialCT")
            return RadialCT{matrix_from_json(j.at("matrix")), j.value("n_dim", 2.0), j.value("m", 0)};
        if (t == "Hankel") return Hankel{j.at("m").get<int>()};
        if (t == "FrHankel") return FrHankel{j.at("m").get<int>(), j.at("alpha").get<double>()};
        if (t == "HankelType")
            return HankelType{j.at("kind").get<int>(), j.at("nu").get<double>(), j.at("nu_prime").get<double>()};
        if (t == "RadialLaplace")
            return RadialLaplace{j.at("kind").get<int>(), j.at("nu").get<double>(), j.at("nu_prime").get<double>()};
        if (t == "BesselExp") {
            const auto& b = j.at("beta");
            BesselExp e{0.0, j.at("nu").get<double>(), j.at("nu_prime").get<double>(), false};
            if (b.is_string()) {
                if (b.get<std::string>() != "i/2") throw ParseError("BesselExp: beta must be a number or \"i/2\"");
                e.imaginary_half = true;
            } else {
                e.beta = b.get<double>();
            }
            return e;
        }
        if (t == "RadialHeatProp") return RadialHeatProp{j.at("t").get<double>(), j.at("mu").get<double>()};
        if (t == "BarutGirardello") return BarutGirardello{j.at("n_dim").get<double>(), j.at("m").get<int>()};
        throw ParseError("unknown transform type " + t);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("transform spec: ") + e.what());
    }
}

double rel_l2(const std::vector<cplx>& a, const std::vector<cplx>& b, int lo, int hi) {
    if (hi < 0) hi = static_cast<int>(std::min(a.size(), b.size()));
    double num = 0.0, den = 0.0;
    for (int i = lo; i < hi; ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace canonica
