#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "canonica/fields.hpp"

namespace canonica {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1]; cached per order.
const QuadRule& gauss_legendre(int n);
// Gauss-Hermite rule for the weight exp(-x^2).
QuadRule gauss_hermite(int n);

// Worker count: CANONICA_THREADS if set, else hardware concurrency.
int thread_count();
// Calls fn(i) for i in [0, n); each index is handled by exactly one worker.
void parallel_for(int n, const std::function<void(int)>& fn);

// Local 12-point barycentric Lagrange interpolation of a sampled field.
// Radial fields with a definite parity are reflected through 0; points
// outside the sampled range evaluate to 0.
class Interpolator {
public:
    explicit Interpolator(const SampledField& f, int order = 12);
    cplx operator()(double x) const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    const SampledField& f_;
    int order_;
    int parity_ = 0;
    double lo_, hi_;
    std::vector<double> bary_;  // barycentric weights for equispaced nodes
};

// sum_j a[j] * w^(k j) for k in [0, m), via Bluestein's algorithm.
std::vector<cplx> chirp_z(const std::vector<cplx>& a, int m, cplx w);

}  // namespace canonica
