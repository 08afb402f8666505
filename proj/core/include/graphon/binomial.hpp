#pragma once

#include <functional>

#include "graphon/graphon.hpp"

namespace graphon {

// ---- exact binomial CDF ----

// P(X <= k) for X ~ Binomial(n, p), p in (0,1). Log-space terms summed on
// the side with fewer of them (complemented if that was the upper side) in
// compensated long double arithmetic. Relative error ~1e-14 on the smaller
// tail through n ~ 1e4, degrading gently toward ~1e-12 near the mode by
// n ~ 1e6.
double exact_cdf_k(int n, long long k, double p);

// P(X <= n*d + delta) = exact_cdf_k at floor(n*d + delta). The CDF is right
// continuous: at integer thresholds the atom is included. Expansions
// converge to the LEFT limit at integers (the sawtooth jumps there), so
// expansion-vs-exact comparisons evaluate exact_cdf_k at ceil(t) - 1.
double exact_cdf(int n, double d, double delta, double p);

// S(x) = ceil(x) - x - 1/2, the 1-periodic sawtooth, with |S| <= 1/2 and
// S(m) = -1/2 at integers (left continuous).
double sawtooth(double x);

// Standard normal CDF / density.
double normal_cdf(double x);
double normal_pdf(double x);

// ---- one-term Edgeworth expansion ----

struct EdgeworthCdf {
    double value = 0.0;
    double error_bound = 0.0;  // (0.2 + 0.3|2p-1|)/(n sigma^2) + exp(-3 sqrt(n) sigma / 2)
    bool in_region = false;    // n sigma^2 >= 25, the bound's validity region
};

// Approximates P(X <= np + x sqrt(n) sigma) by
//   Phi(x) + Q(p,x)/sqrt(n) + S(np + x sqrt(n) sigma) phi(x)/(sqrt(n) sigma),
//   Q(p,x) = (2p-1)(x^2-1) phi(x) / (6 sigma),    sigma^2 = p(1-p).
// The error bound is a theorem constant, valid when in_region; outside the
// region the value is still computed and the flag is cleared.
EdgeworthCdf edgeworth_cdf(int n, double p, double x);

// ---- CDF-in-the-parameter approximation ----

struct EdgeworthTerm {
    double phi_term = 0.0;    // Phi(y_s)
    double correction = 0.0;  // phi(y_s) pi / (sqrt(n) sigma_d)
    double pi_value = 0.0;    // (1-2d)(1+2 y_s^2)/6 + S(nd+delta) + delta
    double y_s = 0.0;         // -s / sigma_d
};

struct CdfApprox {
    double value = 0.0;
    double error_envelope = 0.0;  // C log^2(n) / n, C fitted against exact_cdf
    EdgeworthTerm term;
};

// Approximates H_{n,d,delta}(d + s/sqrt(n)) = P(Bin(n, d + s/sqrt(n)) <= nd + delta).
// Requires d and d + s/sqrt(n) inside (0,1).
CdfApprox cdf_approx(int n, double d, double delta, double s);

// ---- tail bound ----

// Checks |H_{n,d,delta}(u) - 1{u <= d}| <= n^(2-alpha) against the exact
// CDF. Preconditions: sqrt(n)|u-d| >= alpha sqrt(log n), delta in [-1,1].
bool tail_bound_check(int n, double d, double delta, double u, double alpha);

// ---- integral expansion ----

struct IntegralExpansion {
    double lhs = 0.0;       // n * integral of G(x) (H_{n,d,delta}(D(x)) - 1{x<=y}) dx
    double rhs = 0.0;       // (G'D' - GD'')/D'^3 sigma_d^2/2 + (G/D')((1-2d)/2 + delta + S(nd+delta))
    double residual = 0.0;  // lhs - rhs
    bool window_ok = false;  // [d +/- 4 sqrt(log n / n)] inside (D(0), D(1))
};

// Both sides of the first-order expansion of the centered CDF integral at
// d = D(y). g_prime may be null (central difference of g, h = 1e-5).
// Throws PreconditionError without degree-regularity flags, DomainError for
// y outside (0,1), delta outside [-1,1], or d outside (D(0), D(1)); the
// asymptotic window requirement is reported, not enforced.
IntegralExpansion integral_expansion_check(const Graphon& w,
                                           const std::function<double(double)>& g,
                                           const std::function<double(double)>& g_prime,
                                           double y, double delta, int n,
                                           const QuadratureSpec& q = {});

}  // namespace graphon
