#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "canonica/fields.hpp"
#include "canonica/symplectic.hpp"

namespace canonica {

struct LinearCT { SympMat2 m; };
struct Geometric { SympMat2 m; };
struct FresnelProp { double zeta; };
struct FrFT { double alpha; };
struct FrLaplace { double alpha; };
struct PoissonProp { double t; };
struct RadialCT { SympMat2 m; double n_dim = 2.0; int m_idx = 0; };
struct Hankel { int m; };
struct FrHankel { int m; double alpha; };
struct HankelType { int kind; double nu; double nu_prime; };
struct RadialLaplace { int kind; double nu; double nu_prime; };
// beta > 0, or the imaginary value beta = i/2 (flag set).
struct BesselExp { double beta; double nu; double nu_prime; bool imaginary_half = false; };
struct RadialHeatProp { double t; double mu; };
struct BarutGirardello { double n_dim; int m_idx; };

using TransformSpec = std::variant<LinearCT, Geometric, FresnelProp, FrFT, FrLaplace, PoissonProp, RadialCT,
                                   Hankel, FrHankel, HankelType, RadialLaplace, BesselExp, RadialHeatProp,
                                   BarutGirardello>;

nlohmann::json to_json(const TransformSpec& s);
TransformSpec transform_from_json(const nlohmann::json& j);
std::string transform_name(const TransformSpec& s);
// Whether the transform acts on half-line (radial) fields.
bool is_radial(const TransformSpec& s);

enum class Scheme { GaussLegendreComposite, ChirpFFT };

struct QuadratureConfig {
    Scheme scheme = Scheme::GaussLegendreComposite;
    int panels = 8;            // minimum panel count
    int nodes_per_panel = 64;
    double truncation_radius = 1e300;
    // Gaussian apodization width; a value <= 0 selects a quarter of the grid span.
    std::optional<double> apodization;

    void validate() const;
};

SampledField apply(const TransformSpec& spec, const SampledField& field, const Grid1D& out_grid,
                   const QuadratureConfig& cfg = {});

SampledField geometric(const SympMat2& m, const SampledField& field, const Grid1D& out_grid);

SampledField poisson_propagate(const SampledField& field, double t, const Grid1D& out_grid,
                               const QuadratureConfig& cfg = {});
// Gauss-Hermite evaluation of the heat-kernel convolution of f; exact for
// polynomials of degree < 2 * nodes.
SampledField poisson_propagate(const std::function<cplx(double)>& f, double t, const Grid1D& out_grid,
                               int nodes = 32);

SampledField hankel_type(const SampledField& field, int kind, double nu, double nu_prime, const Grid1D& out_grid,
                         const QuadratureConfig& cfg = {});
SampledField radial_laplace(const SampledField& field, int kind, double nu, double nu_prime,
                            const Grid1D& out_grid, const QuadratureConfig& cfg = {});
SampledField bessel_exp(const SampledField& field, double beta, double nu, double nu_prime, const Grid1D& out_grid,
                        const QuadratureConfig& cfg = {});
SampledField radial_heat_propagate(const SampledField& field, double t, double mu, const Grid1D& out_grid,
                                   const QuadratureConfig& cfg = {});
SampledField barut_girardello(const SampledField& field, double n_dim, int m_idx, const Grid1D& out_grid,
                              const QuadratureConfig& cfg = {});

// Relative L2 distance ||a - b|| / ||b|| over samples with index in [lo, hi).
double rel_l2(const std::vector<cplx>& a, const std::vector<cplx>& b, int lo = 0, int hi = -1);

}  // namespace canonica
