#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "graphon/errors.hpp"

namespace graphon {

// How integrals over [0,1]^d are evaluated: tensor Gauss-Legendre up to
// dim_switch dimensions (factored exactly when the integrand allows it),
// Monte Carlo with mc_samples draws above that.
struct QuadratureSpec {
    int nodes_per_dim = 64;
    long long mc_samples = 2'000'000;
    std::uint64_t mc_seed = 0;
    int dim_switch = 4;
    double rel_tol = 1e-10;

    void validate() const {
        if (nodes_per_dim < 2) throw ConfigError("QuadratureSpec: nodes_per_dim must be >= 2");
        if (mc_samples < 1) throw ConfigError("QuadratureSpec: mc_samples must be >= 1");
        if (dim_switch < 1) throw ConfigError("QuadratureSpec: dim_switch must be >= 1");
        if (!(rel_tol > 0)) throw ConfigError("QuadratureSpec: rel_tol must be positive");
    }
};

// Gauss-Legendre rule mapped to [0,1]; weights sum to 1.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Cached rule of the given order (thread safe).
const GaussLegendre& gauss_legendre(int order);

// One-dimensional integral over [a,b] with a single rule of the given order.
double integrate(const std::function<double(double)>& f, double a, double b, int order);

// Integral over [0,1] split at the given interior breakpoints (sorted,
// clamped to (0,1)), one rule per piece. Used where the integrand has a
// sharp transition at known locations.
double integrate_split(const std::function<double(double)>& f,
                       std::vector<double> breakpoints, int order);

}  // namespace graphon
