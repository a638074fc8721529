#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "canonica/fields.hpp"
#include "canonica/symplectic.hpp"

namespace canonica {

using Fn2 = std::function<cplx(double, double)>;
using Fn1 = std::function<cplx(double)>;

// Rectangle of evaluation points in (coordinate, evolution).
struct Window {
    double x0, x1, t0, t1;
    int nx = 17;
    int nt = 5;
};

struct ResidualReport {
    double max_abs = 0.0;
    double l2 = 0.0;  // root-mean-square over the evaluation points
    double grid_h = 0.0;
    double evol_h = 0.0;
    std::optional<double> observed_order;
    std::string note;

    nlohmann::json to_json() const;
};

// Central-difference residual of the equation at the window points.
ResidualReport pde_residual(const Equation& eq, const Fn2& u, const Window& w, double h, double k);
ResidualReport pde_residual(const AnalyticField& f, const Window& w, double h, double k);
// Residuals for each h (with k = h); the report is the finest one with the fitted order attached.
ResidualReport pde_residual_order(const Equation& eq, const Fn2& u, const Window& w, const std::vector<double>& hs);

// Least-squares slope of log(err) against log(h).
double observed_order(const std::vector<double>& hs, const std::vector<double>& errs);

enum class CommutatorPair { X_P, Kp_Km, Kpm_K3, Radial_Kp_Km, Radial_Kpm_K3, Type1_Kp_Km, Type1_Kpm_K3 };

struct CommutatorParams {
    int m = 0;              // radial variants
    double nu = 1.0;        // type-1 variants
    double nu_prime = -1.0;
};

const char* pair_name(CommutatorPair p);

// Max deviation of ([A,B] - rhs) f over the points, derivatives by central differences of step h.
double commutator_check(CommutatorPair pair, const Fn1& f, const std::vector<double>& points, double h,
                        const CommutatorParams& params = {});
double commutator_check(CommutatorPair pair, const SampledField& f, const std::vector<double>& points, double h,
                        const CommutatorParams& params = {});

// Bessel-type operator B_{nu,nu'} and its adjoint applied by central differences.
Fn1 bessel_operator(const Fn1& f, double nu, double nu_prime, double h, bool adjoint);

// Max deviation between H_kind(B f) and -y^2 H_kind(f) over out_grid (B^dagger for kind 1).
double eigen_operator_check(int kind, double nu, double nu_prime, const Fn1& f, const Grid1D& sample_grid,
                            const Grid1D& out_grid, double h);

enum class AppellPair { ChirpPoint, AiryKMBB, BesselBG, HeatVW, RadialRR };

struct PairParams {
    double lambda = 2.0;
    int n = 2;
    int m = 1;
    double mu = 3.0;
};

const char* pair_name(AppellPair p);
double appell_pair_check(AppellPair pair, double evol, const Grid1D& grid, const PairParams& params = {});

// Generator-duality relations under Fourier conjugation and the dual-pair relations.
double duality_matrix_check();
// Elliptic and hyperbolic disentanglement, both orderings, |beta| < pi.
double disentanglement_check(double beta);
// Matrix exponential by scaling and squaring of the Taylor series.
SympMat2 expm(const SympMat2& g);

// max |sum_{n<=nmax} chi^n/n! v_n(x,t) - exp(chi x + chi^2 t / 2)| over the box.
double generating_function_check(double chi_max, double x_max, double t, int nmax = 20);

}  // namespace canonica
