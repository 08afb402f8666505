#include "graphon/binomial.hpp"

#include <cmath>

#include "graphon/errors.hpp"
#include "graphon/quadrature.hpp"

namespace graphon {

namespace {

// log C(n,j) + j log p + (n-j) log q, in long double.
long double log_term(int n, long long j, long double lp, long double lq) {
    return std::lgamma(static_cast<long double>(n) + 1) -
           std::lgamma(static_cast<long double>(j) + 1) -
           std::lgamma(static_cast<long double>(n - j) + 1) +
           static_cast<long double>(j) * lp + static_cast<long double>(n - j) * lq;
}

struct Kahan {
    long double sum = 0.0L, comp = 0.0L;
    void add(long double term) {
        const long double y = term - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

double exact_cdf_k(int n, long long k, double p) {
    if (n < 1) throw DomainError("exact_cdf: n must be positive");
    if (!(p > 0.0 && p < 1.0)) throw DomainError("exact_cdf: p must lie in (0,1)");
    if (k < 0) return 0.0;
    if (k >= n) return 1.0;
    const long double lp = std::log(static_cast<long double>(p));
    const long double lq = std::log1p(static_cast<long double>(-p));
    const long double po = static_cast<long double>(p);
    const long double qo = 1.0L - po;

    // Terms increase up to the mode floor((n+1)p) and decrease after it.
    // Always sum the side whose mass is the tail (never complement a sum
    // close to 1): below the mode the lower side is summed directly, above
    // it the upper side is summed and complemented against a result >= 1/2.
    // One lgamma anchor; neighbors follow from the exact term ratio, so the
    // whole sum inherits the anchor's relative accuracy.
    const long long mode = static_cast<long long>(
        std::floor((static_cast<long double>(n) + 1.0L) * po));

    Kahan acc;
    if (k <= mode) {
        long double term = std::exp(log_term(n, k, lp, lq));
        if (term == 0.0L) return 0.0;  // largest term; the whole tail underflows
        for (long long j = k; j >= 0; --j) {
            acc.add(term);
            if (term < acc.sum * 1e-26L) break;
            // T(j-1) = T(j) * j q / ((n-j+1) p)
            term *= static_cast<long double>(j) * qo /
                    (static_cast<long double>(n - j + 1) * po);
        }
        return static_cast<double>(acc.sum);
    }
    long double term = std::exp(log_term(n, k + 1, lp, lq));
    if (term == 0.0L) return 1.0;
    for (long long j = k + 1; j <= n; ++j) {
        acc.add(term);
        if (term < acc.sum * 1e-26L) break;
        // T(j+1) = T(j) * (n-j) p / ((j+1) q)
        term *= static_cast<long double>(n - j) * po /
                (static_cast<long double>(j + 1) * qo);
    }
    return static_cast<double>(1.0L - acc.sum);
}

double exact_cdf(int n, double d, double delta, double p) {
    const double t = static_cast<double>(n) * d + delta;
    if (t < 0.0) {
        if (n < 1) throw DomainError("exact_cdf: n must be positive");
        if (!(p > 0.0 && p < 1.0)) throw DomainError("exact_cdf: p must lie in (0,1)");
        return 0.0;
    }
    return exact_cdf_k(n, static_cast<long long>(std::floor(t)), p);
}

double sawtooth(double x) { return std::ceil(x) - x - 0.5; }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
}

EdgeworthCdf edgeworth_cdf(int n, double p, double x) {
    if (n < 1) throw DomainError("edgeworth_cdf: n must be positive");
    if (!(p > 0.0 && p < 1.0)) throw DomainError("edgeworth_cdf: p must lie in (0,1)");
    const double var = p * (1.0 - p);
    const double sigma = std::sqrt(var);
    const double rn = std::sqrt(static_cast<double>(n));

    EdgeworthCdf out;
    const double q_term = (2.0 * p - 1.0) * (x * x - 1.0) * normal_pdf(x) / (6.0 * sigma);
    out.value = normal_cdf(x) + q_term / rn +
                sawtooth(n * p + x * rn * sigma) * normal_pdf(x) / (rn * sigma);
    out.error_bound = (0.2 + 0.3 * std::abs(2.0 * p - 1.0)) / (n * var) +
                      std::exp(-1.5 * rn * sigma);
    out.in_region = n * var >= 25.0;
    return out;
}

namespace {

// Envelope constant for cdf_approx, calibrated against exact_cdf over
// n in {64,...,4096}, d in [0.3, 0.7], s in [-2, 2], off-lattice
// thresholds. The measured worst ratio |residual| * n / log^2(n) stays
// below 0.10; 0.25 leaves margin for parameter corners.
constexpr double kApproxEnvelopeC = 0.25;

}  // namespace

CdfApprox cdf_approx(int n, double d, double delta, double s) {
    if (n < 2) throw DomainError("cdf_approx: n too small");
    const double u = d + s / std::sqrt(static_cast<double>(n));
    if (!(d > 0.0 && d < 1.0 && u > 0.0 && u < 1.0))
        throw DomainError("cdf_approx: d and d + s/sqrt(n) must lie in (0,1)");
    const double sigma = std::sqrt(d * (1.0 - d));
    const double rn = std::sqrt(static_cast<double>(n));

    CdfApprox out;
    out.term.y_s = -s / sigma;
    out.term.phi_term = normal_cdf(out.term.y_s);
    out.term.pi_value = (1.0 - 2.0 * d) * (1.0 + 2.0 * out.term.y_s * out.term.y_s) / 6.0 +
                        sawtooth(n * d + delta) + delta;
    out.term.correction = normal_pdf(out.term.y_s) * out.term.pi_value / (rn * sigma);
    out.value = out.term.phi_term + out.term.correction;
    const double logn = std::log(static_cast<double>(n));
    out.error_envelope = kApproxEnvelopeC * logn * logn / n;
    return out;
}

bool tail_bound_check(int n, double d, double delta, double u, double alpha) {
    if (n < 2) throw DomainError("tail_bound_check: n too small");
    if (delta < -1.0 || delta > 1.0)
        throw DomainError("tail_bound_check: delta outside [-1,1]");
    const double gap = std::sqrt(static_cast<double>(n)) * std::abs(u - d);
    if (gap < alpha * std::sqrt(std::log(static_cast<double>(n))))
        throw DomainError("tail_bound_check: sqrt(n)|u-d| below alpha sqrt(log n)");
    const double h = exact_cdf(n, d, delta, u);
    const double target = u <= d ? 1.0 : 0.0;
    return std::abs(h - target) <= std::pow(static_cast<double>(n), 2.0 - alpha);
}

IntegralExpansion integral_expansion_check(const Graphon& w,
                                           const std::function<double(double)>& g,
                                           const std::function<double(double)>& g_prime,
                                           double y, double delta, int n,
                                           const QuadratureSpec& q) {
    if (!g) throw DomainError("integral_expansion_check: null G");
    if (!(y > 0.0 && y < 1.0)) throw DomainError("integral_expansion_check: y outside (0,1)");
    if (delta < -1.0 || delta > 1.0)
        throw DomainError("integral_expansion_check: delta outside [-1,1]");
    if (n < 2) throw DomainError("integral_expansion_check: n too small");
    if (!w.regularity().epsilon0 &&
        !(w.analytic_degree() && w.analytic_degree()->d_inverse))
        throw PreconditionError(
            "integral_expansion_check: needs an invertible degree function");

    const double d = degree(w, y, q);
    const double d_lo = degree(w, 0.0, q), d_hi = degree(w, 1.0, q);
    if (!(d > d_lo && d < d_hi))
        throw DomainError("integral_expansion_check: D(y) not interior to the degree range");

    IntegralExpansion out;
    const double window = 4.0 * std::sqrt(std::log(static_cast<double>(n)) / n);
    out.window_ok = d - window > d_lo && d + window < d_hi;

    // The integrand transitions over |D(x) - d| of order sigma/sqrt(n);
    // split the domain there (and at the indicator jump x = y) so each
    // Gauss-Legendre piece sees a smooth function.
    const double sigma = std::sqrt(d * (1.0 - d));
    std::vector<double> cuts{y};
    for (int j = -8; j <= 8; ++j) {
        const double dj = d + j * sigma / std::sqrt(static_cast<double>(n));
        if (dj > d_lo && dj < d_hi) cuts.push_back(degree_inverse(w, dj, q));
    }
    const auto integrand = [&](double x) {
        const double h = exact_cdf(n, d, delta, degree(w, x, q));
        return g(x) * (h - (x <= y ? 1.0 : 0.0));
    };
    out.lhs = n * integrate_split(integrand, cuts, 48);

    const double gp = g_prime ? g_prime(y) : (g(y + 1e-5) - g(y - 1e-5)) / 2e-5;
    const double d1 = degree_derivative(w, y, q);
    const double d2 = degree_second_derivative(w, y, q);
    out.rhs = (gp * d1 - g(y) * d2) / (d1 * d1 * d1) * (sigma * sigma / 2.0) +
              g(y) / d1 * ((1.0 - 2.0 * d) / 2.0 + delta + sawtooth(n * d + delta));
    out.residual = out.lhs - out.rhs;
    return out;
}

}  // namespace graphon
