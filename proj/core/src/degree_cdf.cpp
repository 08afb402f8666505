#include "graphon/degree_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "graphon/binomial.hpp"
#include "graphon/errors.hpp"
#include "graphon/rng.hpp"

namespace graphon {

namespace {

void check_interior(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
        throw DomainError(std::string("degree_cdf: ") + name +
                          " must lie in (0,1)");
    }
}

void check_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw DomainError(std::string("degree_cdf: ") + name +
                          " must lie in [0,1]");
    }
}

}  // namespace

DegreeCdfKernel::DegreeCdfKernel(Graphon w, QuadratureSpec q)
    : w_(std::move(w)), q_(q) {
    q_.validate();
}

double DegreeCdfKernel::dprime(double y) const {
    const double v = degree_derivative(w_, y, q_);
    if (!(v > 0.0)) {
        throw PreconditionError(
            "degree_cdf: kernel needs a strictly increasing degree function");
    }
    return v;
}

double DegreeCdfKernel::sigma1(double y, double z) const {
    check_interior(y, "y");
    check_interior(z, "z");
    return std::min(y, z) - y * z;
}

double DegreeCdfKernel::sigma2(double y, double z) const {
    check_interior(y, "y");
    check_interior(z, "z");
    const double dy = dprime(y);
    const double dz = dprime(z);
    const double cross = integrate(
        [&](double x) { return w_(y, x) * w_(z, x); }, 0.0, 1.0,
        q_.nodes_per_dim);
    return (cross - degree(w_, y, q_) * degree(w_, z, q_)) / (dy * dz);
}

double DegreeCdfKernel::sigma3(double y, double z) const {
    check_interior(y, "y");
    check_interior(z, "z");
    const auto partial = [&](double a, double b) {
        // (D(a) b - int_0^b W(a,x) dx) / D'(a)
        const double head =
            integrate([&](double x) { return w_(a, x); }, 0.0, b,
                      q_.nodes_per_dim);
        return (degree(w_, a, q_) * b - head) / dprime(a);
    };
    return partial(y, z) + partial(z, y);
}

SigmaParts DegreeCdfKernel::sigma(double y, double z) const {
    SigmaParts parts;
    parts.s1 = sigma1(y, z);
    parts.s2 = sigma2(y, z);
    parts.s3 = sigma3(y, z);
    parts.total = parts.s1 + parts.s2 + parts.s3;
    return parts;
}

double DegreeCdfKernel::rho(double y, double u) const {
    check_interior(y, "y");
    check_unit(u, "u");
    return (u <= y ? 1.0 : 0.0) - w_(y, u) / dprime(y);
}

double DegreeCdfKernel::rho_bar(double y) const {
    check_interior(y, "y");
    return y - degree(w_, y, q_) / dprime(y);
}

double empirical_cdf(const SampledGraph& g, const Graphon& w, double y) {
    check_unit(y, "y");
    const double d = degree(w, y);
    const std::vector<double> deg = degree_sequence(g);
    long long count = 0;
    for (double v : deg) {
        if (v <= d) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(g.n);
}

double c_n_exact(const Graphon& w, int n, double y, const QuadratureSpec& q) {
    if (n < 1) throw DomainError("c_n_exact: n must be >= 1");
    if (!(y > 0.0 && y <= 1.0)) {
        throw DomainError("c_n_exact: y must lie in (0,1]");
    }
    q.validate();
    const double d = degree(w, y, q);
    const double lo = degree(w, 0.0, q);
    const double hi = degree(w, 1.0, q);

    // The integrand is ~1 left of the layer where D(x) crosses d and ~0
    // right of it; place panel boundaries across that layer.
    const double sd = std::sqrt(d * (1.0 - d));
    std::vector<double> cuts;
    for (int j = -5; j <= 5; ++j) {
        const double target = d + j * sd / std::sqrt(static_cast<double>(n));
        if (!(target > lo && target < hi)) continue;
        try {
            cuts.push_back(degree_inverse(w, target, q));
        } catch (const Error&) {
            cuts.clear();  // no usable inverse; fall back to a uniform split
            break;
        }
    }
    if (cuts.empty()) {
        for (int j = 1; j < 16; ++j) cuts.push_back(j / 16.0);
        if (y < 1.0) cuts.push_back(y);
    }
    return integrate_split(
        [&](double x) { return exact_cdf(n, d, 0.0, degree(w, x, q)); }, cuts,
        q.nodes_per_dim);
}

double c_n_expansion(const Graphon& w, int n, double y,
                     const QuadratureSpec& q) {
    if (n < 1) throw DomainError("c_n_expansion: n must be >= 1");
    check_interior(y, "y");
    const double d = degree(w, y, q);
    const double d1 = degree_derivative(w, y, q);
    if (!(d1 > 0.0)) {
        throw PreconditionError(
            "c_n_expansion: needs a strictly increasing degree function");
    }
    const double d2 = degree_second_derivative(w, y, q);
    return -(d2 / (d1 * d1 * d1)) * d * (1.0 - d) / 2.0 +
           ((1.0 - 2.0 * d) / 2.0 + sawtooth(n * d)) / d1;
}

SigmaParts sigma_kernel(const Graphon& w, double y, double z,
                        const QuadratureSpec& q) {
    return DegreeCdfKernel(w, q).sigma(y, z);
}

double chi_variance_rho(const Graphon& w, double y, double z,
                        const QuadratureSpec& q) {
    const DegreeCdfKernel kernel(w, q);
    const double my = kernel.rho_bar(y);
    const double mz = kernel.rho_bar(z);
    std::vector<double> cuts{y, z};  // rho(y,.) jumps at y, rho(z,.) at z
    return integrate_split(
        [&](double u) {
            return (kernel.rho(y, u) - my) * (kernel.rho(z, u) - mz);
        },
        cuts, q.nodes_per_dim);
}

HLimits h_limit(const Graphon& w, double y, double u, const QuadratureSpec& q) {
    check_interior(y, "y");
    check_unit(u, "u");
    const double d1 = degree_derivative(w, y, q);
    if (!(d1 > 0.0)) {
        throw PreconditionError(
            "h_limit: needs a strictly increasing degree function");
    }
    HLimits out;
    out.h = (degree(w, y, q) - w(y, u)) / d1;
    out.h_star = (u <= y ? 1.0 : 0.0) - y;
    return out;
}

BernoulliCovMatrix bernoulli_cov_matrix(const Graphon& w, double y1, double y2,
                                        const QuadratureSpec& q) {
    check_unit(y1, "y1");
    check_unit(y2, "y2");
    q.validate();
    const double p1 = degree(w, y1, q);
    const double p2 = degree(w, y2, q);
    const double alpha = integrate(
        [&](double z) { return w(y1, z) * w(y2, z); }, 0.0, 1.0,
        q.nodes_per_dim);
    BernoulliCovMatrix m;
    m.var1 = p1 * (1.0 - p1);
    m.var2 = p2 * (1.0 - p2);
    m.cov = alpha - p1 * p2;
    m.det = m.var1 * m.var2 - m.cov * m.cov;
    m.positive_definite = m.det > 0.0 && m.var1 > 0.0;
    return m;
}

ProductBound product_integral_bound(const std::function<double(double)>& f,
                                    const std::function<double(double)>& g,
                                    double eps, const QuadratureSpec& q) {
    if (!(eps > 0.0 && eps < 0.5)) {
        throw DomainError("product_integral_bound: eps must lie in (0, 1/2)");
    }
    if (!f || !g) throw DomainError("product_integral_bound: null function");
    q.validate();
    const double cap = 1.0 - eps + 1e-12;
    for (int i = 0; i <= 256; ++i) {
        const double x = i / 256.0;
        if (f(x) < -1e-12 || f(x) > cap || g(x) < -1e-12 || g(x) > cap) {
            throw DomainError(
                "product_integral_bound: f, g must take values in [0, 1-eps]");
        }
    }
    ProductBound out;
    const double sum = integrate([&](double x) { return f(x) + g(x); }, 0.0,
                                 1.0, q.nodes_per_dim);
    out.delta = 1.0 - sum;
    if (std::abs(out.delta) > eps / 2.0 + 1e-12) {
        throw DomainError(
            "product_integral_bound: 1 - int(f+g) must lie in [-eps/2, eps/2]");
    }
    out.integral = integrate([&](double x) { return f(x) * g(x); }, 0.0, 1.0,
                             q.nodes_per_dim);
    out.bound = (1.0 - eps) * (eps - out.delta);
    return out;
}

PairCovEstimate indicator_pair_cov(const Graphon& w, double y1, double y2,
                                   int n, long long reps, std::uint64_t seed) {
    check_interior(y1, "y1");
    check_interior(y2, "y2");
    if (n < 2) throw DomainError("indicator_pair_cov: n must be >= 2");
    if (reps < 2) throw DomainError("indicator_pair_cov: reps must be >= 2");
    const double t1 = n * degree(w, y1);
    const double t2 = n * degree(w, y2);

    // Welford over Z_r = (1{deg1 <= n d1} - 1{X1 <= y1})
    //                    (1{deg2 <= n d2} - 1{X2 <= y2}).
    double mean = 0.0;
    double m2 = 0.0;
    const std::uint64_t root = rng::derive(seed, rng::hash_tag("pair-cov"));
    for (long long r = 0; r < reps; ++r) {
        rng::Philox gen(
            rng::derive(root, rng::kTagReplicate, static_cast<std::uint64_t>(r)),
            0);
        const double x1 = gen.next_unit();
        const double x2 = gen.next_unit();
        int deg1 = gen.next_unit() < w(x1, x2) ? 1 : 0;
        int deg2 = deg1;  // the tracked pair shares its connecting edge
        for (int j = 0; j < n - 1; ++j) {
            const double xj = gen.next_unit();
            if (gen.next_unit() < w(x1, xj)) ++deg1;
            if (gen.next_unit() < w(x2, xj)) ++deg2;
        }
        const double z = ((deg1 <= t1 ? 1.0 : 0.0) - (x1 <= y1 ? 1.0 : 0.0)) *
                         ((deg2 <= t2 ? 1.0 : 0.0) - (x2 <= y2 ? 1.0 : 0.0));
        const double delta = z - mean;
        mean += delta / static_cast<double>(r + 1);
        m2 += delta * (z - mean);
    }
    PairCovEstimate out;
    out.reps = reps;
    out.value = n * mean;
    out.se = n * std::sqrt(m2 / static_cast<double>(reps - 1) /
                           static_cast<double>(reps));
    return out;
}

}  // namespace graphon
