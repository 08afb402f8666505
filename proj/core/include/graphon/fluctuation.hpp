#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "graphon/graphon.hpp"
#include "graphon/motif.hpp"
#include "graphon/quadrature.hpp"
#include "graphon/sampler.hpp"

namespace graphon {

// Test function g: [0,1]^d -> R for the empirical measures. The gradient is
// required by the CLT variance (and checked there against finite
// differences); thresholds list the jump locations of piecewise-constant g
// so integrators can split at the preimages.
struct TestFunction {
    enum class Smoothness { kC0, kC1, kC2 };

    int dim = 1;
    Smoothness smoothness = Smoothness::kC2;
    std::function<double(const std::vector<double>&)> value;
    std::function<std::vector<double>(const std::vector<double>&)> gradient;
    std::vector<double> thresholds;

    static TestFunction identity();
    static TestFunction constant(double c, int dim = 1);
    // c0 + c1 t + c2 t^2 + ... on d = 1.
    static TestFunction polynomial(std::vector<double> coeffs);
    // 1_{[0, threshold]}(t) on d = 1; C0, no gradient.
    static TestFunction indicator(double threshold);
    // g(x) = <a, x> on d = |a|.
    static TestFunction linear(std::vector<double> a);
};

// Verifies gradient against central differences (h = 1e-4) at `points`
// interior points; throws DomainError on disagreement beyond tol, or
// PreconditionError when no gradient is present.
void check_gradient(const TestFunction& g, std::uint64_t seed = 0, int points = 100,
                    double tol = 1e-5);

// ---- empirical measure of rooted densities ----

struct GammaEstimate {
    double value = 0.0;
    bool exact = true;  // full enumeration of the root words
    std::uint64_t alphas_used = 0;
};

inline constexpr std::uint64_t kDefaultAlphaBudget = 1'000'000;

// Gamma_n(g) = average over root words alpha of length k of
//   hat_Y^alpha g(tilde_t(F^l, G^alpha)) + (1 - hat_Y^alpha) g(0),
// the mean of g under the empirical measure of the rooted injective
// densities. Exact when the number of root words is at most alpha_budget;
// otherwise a seeded uniform subsample of that size, without replacement,
// flagged in the result.
GammaEstimate gamma_n(const MotifFamily& family, const TestFunction& g,
                      const SampledGraph& G,
                      std::uint64_t alpha_budget = kDefaultAlphaBudget,
                      std::uint64_t seed = 0);

// Deterministic limit: integral over x in [0,1]^k of hat_t_x g(tilde_t_x)
// plus the atom (1 - int hat_t_x dx) g(0). For piecewise-constant g on
// k = 1 the integral is split at the threshold preimages.
double gamma_limit(const MotifFamily& family, const TestFunction& g, const Graphon& w,
                   const QuadratureSpec& q = {});

// ---- CLT variance ----

struct CltOptions {
    long long u_draws = 100'000;   // Monte Carlo draws of the outer variable
    std::uint64_t seed = 0;
    bool deterministic_u = false;  // Gauss-Legendre in U instead of Monte Carlo
    int u_order = 64;              // rule order in deterministic mode
};

struct VarianceReport {
    double sigma2 = 0.0;
    double mc_error = 0.0;  // standard error of sigma2 (0 when deterministic)
    // Variances of the two sums whose total defines sigma2: the label
    // substitution sum and the free-vertex gradient sum.
    double substitution_var = 0.0;
    double gradient_var = 0.0;
};

// Var of
//   U = sum_{i<=k} int hat_t_{R_i(x,U)} (g(tilde_t_{R_i(x,U)}) - g(0)) dx
//     + sum_{q free} int < t_{xU}(F^{lq}), grad g(tilde_t_x) > dx
// over U uniform, the asymptotic variance of sqrt(n)(Gamma_n(g) - Gamma(g)).
// The x-integrals are tensor Gauss-Legendre (k <= 2); U is Monte Carlo by
// default or a Gauss-Legendre rule in deterministic mode (exact for smooth
// integrands). Requires a gradient; it is finite-difference checked first.
VarianceReport sigma2_clt(const MotifFamily& family, const TestFunction& g,
                          const Graphon& w, const QuadratureSpec& q = {},
                          const CltOptions& opt = {});

// ---- covariance kernels of the density fluctuations ----

enum class KInjMethod {
    kJoinGraph,      // sum_{q,q'} t((F join F')(q,q'), W) - p p' t(F,W) t(F',W)
    kJointIntegral,  // Cov(sum_q t_U(F^q,W), sum_q' t_U(F'^q',W)) by quadrature
};

// Asymptotic covariance of sqrt(n)(t_inj(F, G_n) - t(F, W)) across motifs.
// The two methods are algebraically equal; both are kept as mutual oracles.
double k_inj(const SimpleGraph& f, const SimpleGraph& fprime, const Graphon& w,
             const QuadratureSpec& q = {}, KInjMethod method = KInjMethod::kJoinGraph);

// Induced-density analogue: alternating sum of the k_inj bracket over the
// supergraphs of both arguments (absolute edge-count parity).
double k_ind(const SimpleGraph& f1, const SimpleGraph& f2, const Graphon& w,
             const QuadratureSpec& q = {});

// Same value through the covariance form, by quadrature; cross-check route.
double k_ind_cov(const SimpleGraph& f1, const SimpleGraph& f2, const Graphon& w,
                 const QuadratureSpec& q = {});

// ---- quantum graphs: formal linear combinations of motifs ----

double quantum_density(const std::vector<double>& a,
                       const std::vector<SimpleGraph>& motifs, const SimpleGraph& g);
double quantum_density(const std::vector<double>& a,
                       const std::vector<SimpleGraph>& motifs, const Graphon& w,
                       const QuadratureSpec& q = {});

// Variance of the quantum density fluctuation: a' K_inj a.
double sigma2_quantum(const std::vector<double>& a,
                      const std::vector<SimpleGraph>& motifs, const Graphon& w,
                      const QuadratureSpec& q = {});

// Constant kernel W == p: the sqrt(n) fluctuation of t_inj degenerates and
// the n-rescaled one is Gaussian with variance 2 e(F)^2 p^(2e(F)-1) (1-p).
// Needs p in (0,1) and at least one edge.
double er_second_order_variance(const SimpleGraph& f, double p);

}  // namespace graphon
