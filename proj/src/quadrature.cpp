#include "canonica/quadrature.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <thread>

#include "canonica/errors.hpp"

namespace canonica {

namespace {

QuadRule make_legendre(int n) {
    QuadRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = r.weights[n - 1 - i] = w;
    }
    return r;
}

}  // namespace

const QuadRule& gauss_legendre(int n) {
    if (n < 1 || n > 1024) throw DomainError("gauss_legendre: order out of range");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<QuadRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<QuadRule>(make_legendre(n));
    return *slot;
}

QuadRule gauss_hermite(int n) {
    if (n < 1 || n > 200) throw DomainError("gauss_hermite: order out of range");
    // Golub-Welsch: eigen-decomposition of the Jacobi matrix
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = std::sqrt(k / 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    QuadRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double mu0 = std::sqrt(std::numbers::pi);
    for (int k = 0; k < n; ++k) {
        r.nodes[k] = es.eigenvalues()(k);
        double v = es.eigenvectors()(0, k);
        r.weights[k] = mu0 * v * v;
    }
    return r;
}

int thread_count() {
    if (const char* s = std::getenv("CANONICA_THREADS")) {
        int n = std::atoi(s);
        if (n >= 1) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    int nt = std::min(thread_count(), n);
    if (nt <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto work = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

Interpolator::Interpolator(const SampledField& f, int order) : f_(f), order_(std::min(order, f.grid.count)) {
    lo_ = f.grid.start;
    hi_ = f.grid.end();
    if (f.geometry.is_radial()) {
        if (auto p = f.geometry.parity()) parity_ = *p;
    }
    if (parity_ != 0 && lo_ <= 1e-12 * f.grid.step) lo_ = -hi_;
    // equispaced barycentric weights (-1)^j binom(n-1, j)
    bary_.resize(order_);
    double b = 1.0;
    for (int j = 0; j < order_; ++j) {
        bary_[j] = (j % 2 ? -b : b);
        b = b * (order_ - 1 - j) / (j + 1.0);
    }
}

cplx Interpolator::operator()(double x) const {
    const Grid1D& g = f_.grid;
    const double eps = 1e-9 * g.step;
    if (x < lo_ - eps || x > hi_ + eps) return 0.0;
    // stencil positions are virtual indices; negative ones reflect through 0
    bool reflect = parity_ != 0 && g.start <= 1e-12 * g.step;
    double u = (x - g.start) / g.step;
    int first = static_cast<int>(std::floor(u)) - order_ / 2 + 1;
    int lo_idx = reflect ? -(g.count - 1) : 0;
    first = std::clamp(first, lo_idx, g.count - order_);
    auto sample = [&](int idx) -> cplx {
        if (idx >= 0) return f_.values[idx];
        return double(parity_) * f_.values[-idx];
    };
    cplx num = 0.0;
    double den = 0.0;
    for (int j = 0; j < order_; ++j) {
        double d = u - (first + j);
        if (std::fabs(d) < 1e-13) return sample(first + j);
        double w = bary_[j] / d;
        num += w * sample(first + j);
        den += w;
    }
    return num / den;
}

namespace {
std::mutex& fftw_plan_mutex() {
    static std::mutex mu;
    return mu;
}

struct FftwBuffer {
    fftw_complex* p;
    explicit FftwBuffer(std::size_t n) : p(fftw_alloc_complex(n)) {}
    ~FftwBuffer() { fftw_free(p); }
    cplx* data() { return reinterpret_cast<cplx*>(p); }
};
}  // namespace

std::vector<cplx> chirp_z(const std::vector<cplx>& a, int m, cplx w) {
    const int n = static_cast<int>(a.size());
    int len = 1;
    while (len < n + m - 1) len <<= 1;
    FftwBuffer x(len), y(len);
    fftw_plan pf, pb, py;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        pf = fftw_plan_dft_1d(len, x.p, x.p, FFTW_FORWARD, FFTW_ESTIMATE);
        py = fftw_plan_dft_1d(len, y.p, y.p, FFTW_FORWARD, FFTW_ESTIMATE);
        pb = fftw_plan_dft_1d(len, x.p, x.p, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    // w^(k^2/2) with w = |w| e^{i theta}; only unit-modulus w is used here
    const double theta = std::arg(w);
    auto chirp = [&](long long k) {
        double ph = std::fmod(0.5 * theta * double(k) * double(k), 2.0 * std::numbers::pi);
        return std::polar(std::pow(std::abs(w), 0.5 * double(k) * double(k)), ph);
    };
    cplx* xd = x.data();
    cplx* yd = y.data();
    std::fill(xd, xd + len, cplx(0.0));
    std::fill(yd, yd + len, cplx(0.0));
    for (int j = 0; j < n; ++j) xd[j] = a[j] * chirp(j);
    for (int k = 0; k < std::max(n, m); ++k) {
        cplx c = 1.0 / chirp(k);
        if (k < m) yd[k] = c;
        if (k > 0 && k < n) yd[len - k] = c;
    }
    fftw_execute(pf);
    fftw_execute(py);
    for (int i = 0; i < len; ++i) xd[i] *= yd[i];
    fftw_execute(pb);
    std::vector<cplx> out(m);
    for (int k = 0; k < m; ++k) out[k] = xd[k] * chirp(k) / double(len);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(pf);
        fftw_destroy_plan(pb);
        fftw_destroy_plan(py);
    }
    return out;
}

}  // namespace canonica
