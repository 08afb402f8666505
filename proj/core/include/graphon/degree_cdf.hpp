#pragma once

#include <cstdint>
#include <functional>

#include "graphon/graphon.hpp"
#include "graphon/quadrature.hpp"
#include "graphon/sampler.hpp"

namespace graphon {

// Limit covariance kernel of the centered empirical degree CDF
// sqrt(n) (Pi_n(y) - y). The kernel splits into three parts,
//
//   Sigma_1(y,z) = min(y,z) - yz
//   Sigma_2(y,z) = (int_0^1 W(y,x) W(z,x) dx - D(y) D(z)) / (D'(y) D'(z))
//   Sigma_3(y,z) = (D(y) z - int_0^z W(y,x) dx) / D'(y)
//               + (D(z) y - int_0^y W(z,x) dx) / D'(z),
//
// and Sigma = Sigma_1 + Sigma_2 + Sigma_3. Sigma_1 is the Brownian-bridge
// covariance, Sigma_2 the degree-noise contribution, Sigma_3 the cross term.
struct SigmaParts {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
    double total = 0.0;
};

// Evaluators around a fixed graphon. The kernel also has a score
// representation: with
//
//   rho(y,u) = 1{u <= y} - W(y,u) / D'(y),    rho_bar(y) = y - D(y) / D'(y),
//
// Sigma(y,z) equals the L2 inner product of the centered scores
// rho(y,.) - rho_bar(y) and rho(z,.) - rho_bar(z) (see chi_variance_rho).
// Evaluators need D' > 0 at their arguments and throw PreconditionError
// otherwise; arguments outside (0,1) (or [0,1] for u) are DomainError.
class DegreeCdfKernel {
public:
    explicit DegreeCdfKernel(Graphon w, QuadratureSpec q = {});

    double sigma1(double y, double z) const;
    double sigma2(double y, double z) const;
    double sigma3(double y, double z) const;
    SigmaParts sigma(double y, double z) const;

    double rho(double y, double u) const;
    double rho_bar(double y) const;

    const Graphon& graphon() const { return w_; }

private:
    double dprime(double y) const;

    Graphon w_;
    QuadratureSpec q_;
};

// Pi_n(y) = (1/n) #{i : D_i(G) <= D(y)} for the normalized degree sequence
// of g. Needs n >= 2 and y in [0,1].
double empirical_cdf(const SampledGraph& g, const Graphon& w, double y);

// c_n(y) = E[Pi_{n+1}(y)] = int_0^1 P(Bin(n, D(x)) <= n D(y)) dx, evaluated
// by quadrature against the exact binomial CDF. The integrand drops from 1
// to 0 across a layer of width ~ sigma/sqrt(n) around x = y, so the domain
// is split at the preimages D^{-1}(d + j sigma / sqrt(n)), |j| <= 5, with
// sigma^2 = d(1-d). y in (0,1]; n >= 1.
double c_n_exact(const Graphon& w, int n, double y, const QuadratureSpec& q = {});

// First-order expansion of n (c_n(y) - y):
//
//   -(D''(y)/D'(y)^3) d(1-d)/2 + (1/D'(y)) ((1-2d)/2 + S(nd)),  d = D(y),
//
// with S the centered sawtooth. The gap to n (c_n_exact - y) decays like
// n^{-1/4}.
double c_n_expansion(const Graphon& w, int n, double y, const QuadratureSpec& q = {});

// Sigma parts at (y,z); see SigmaParts.
SigmaParts sigma_kernel(const Graphon& w, double y, double z,
                        const QuadratureSpec& q = {});

// Var/Cov of the limit score: int_0^1 (rho(y,u) - rho_bar(y)) (rho(z,u) -
// rho_bar(z)) du, integrated with splits at the indicator jumps u = y, z.
// Equal to sigma_kernel(...).total; the two routes share no code beyond the
// degree helpers, so their agreement exercises the kernel algebra.
double chi_variance_rho(const Graphon& w, double y, double z,
                        const QuadratureSpec& q = {});

// Pointwise limits of the conditional CDF corrections: h is the limit of
// H_n(y,u), h_star the limit of the companion H_n*(y,u).
struct HLimits {
    double h = 0.0;       // (D(y) - W(y,u)) / D'(y); integrates to 0 over u
    double h_star = 0.0;  // 1{u <= y} - y
};
HLimits h_limit(const Graphon& w, double y, double u,
                const QuadratureSpec& q = {});

// Covariance matrix of the indicator pair (1{U <= W(y1,Z)}, 1{U <= W(y2,Z)})
// driving the two-point degree CLT:
//
//   [ p(1-p)      alpha - p p' ]        p = D(y1), p' = D(y2),
//   [ alpha - pp' p'(1-p')     ]        alpha = int W(y1,z) W(y2,z) dz.
//
// Under degree regularity the determinant is bounded away from 0; a
// non-positive determinant is reported through the flag, not thrown.
struct BernoulliCovMatrix {
    double var1 = 0.0;
    double cov = 0.0;
    double var2 = 0.0;
    double det = 0.0;
    bool positive_definite = false;
};
BernoulliCovMatrix bernoulli_cov_matrix(const Graphon& w, double y1, double y2,
                                        const QuadratureSpec& q = {});

// Lower bound behind the determinant control: for 0 <= f,g <= 1-eps with
// int (f+g) = 1-delta and delta in [-eps/2, eps/2],
//
//   int fg >= (1-eps)(eps-delta),
//
// attained by the constant pair f = eps-delta, g = 1-eps. Returns both
// sides; range and mean-sum violations are DomainError.
struct ProductBound {
    double integral = 0.0;  // int_0^1 f g
    double bound = 0.0;     // (1-eps)(eps-delta)
    double delta = 0.0;     // 1 - int_0^1 (f+g)
};
ProductBound product_integral_bound(const std::function<double(double)>& f,
                                    const std::function<double(double)>& g,
                                    double eps, const QuadratureSpec& q = {});

// Monte Carlo estimate of n Cov(1{D_1 <= D(y1)} - 1{X_1 <= y1},
// 1{D_2 <= D(y2)} - 1{X_2 <= y2}) in G_{n+1}(W), which converges to
// Sigma_2(y1,y2). Only the joint neighborhood of the two tracked vertices
// is simulated (latents X_1, X_2, the shared edge, and both coin rows
// against n-1 common latents), which reproduces the joint law of the two
// normalized degrees at O(n) cost per replicate. Replicates use derived
// seeds, so the estimate is independent of evaluation order.
struct PairCovEstimate {
    double value = 0.0;  // n * sample mean
    double se = 0.0;     // n * sample sd / sqrt(reps)
    long long reps = 0;
};
PairCovEstimate indicator_pair_cov(const Graphon& w, double y1, double y2,
                                   int n, long long reps, std::uint64_t seed);

}  // namespace graphon
