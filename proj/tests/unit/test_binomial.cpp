#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <vector>

#include "graphon/binomial.hpp"
#include "graphon/errors.hpp"
#include "graphon/rng.hpp"

using namespace graphon;

TEST_SUITE_BEGIN("binomial");

// Reference values computed with exact rational arithmetic (sum of
// C(n,i) p^i (1-p)^(n-i) over i <= k with p rational), rounded once.
TEST_CASE("exact cdf against big-rational references") {
    const double tol = 1e-14;
    CHECK(exact_cdf_k(2, 1, 0.5) == doctest::Approx(0.75).epsilon(tol));
    CHECK(exact_cdf_k(100, 50, 0.5) ==
          doctest::Approx(0.53979461869358936).epsilon(tol));
    CHECK(exact_cdf_k(100, 25, 0.3) ==
          doctest::Approx(0.16313010446635176).epsilon(tol));
    CHECK(exact_cdf_k(100, 36, 0.3) ==
          doctest::Approx(0.9201199577062692).epsilon(tol));
    CHECK(exact_cdf_k(1000, 480, 0.5) ==
          doctest::Approx(0.10872414660207047).epsilon(tol));
    CHECK(exact_cdf_k(37, 20, 7.0 / 16.0) ==
          doctest::Approx(0.92296990730732542).epsilon(tol));
    CHECK(exact_cdf_k(500, 100, 0.25) ==
          doctest::Approx(0.0049037049027901907).epsilon(tol));
    CHECK(exact_cdf_k(50, 49, 0.9) ==
          doctest::Approx(0.99484622479267992).epsilon(tol));

    // Support edges.
    CHECK(exact_cdf_k(10, -1, 0.3) == 0.0);
    CHECK(exact_cdf_k(10, 10, 0.3) == 1.0);
    CHECK(exact_cdf_k(10, 25, 0.3) == 1.0);
    CHECK_THROWS_AS(exact_cdf_k(10, 5, 0.0), DomainError);
    CHECK_THROWS_AS(exact_cdf_k(10, 5, 1.0), DomainError);
    CHECK_THROWS_AS(exact_cdf_k(0, 0, 0.5), DomainError);

    // Threshold form: P(X <= nd + delta) at the floor.
    CHECK(exact_cdf(2, 0.5, 0.0, 0.5) == doctest::Approx(0.75).epsilon(tol));
    CHECK(exact_cdf(10, 1.0, 0.0, 0.3) == doctest::Approx(1.0));
    CHECK(exact_cdf(100, 0.5, 0.0, 0.5) ==
          doctest::Approx(0.53979461869358936).epsilon(tol));
    CHECK(exact_cdf(100, 0.5, -0.5, 0.5) ==
          doctest::Approx(0.46020538130641064)
              .epsilon(tol));  // floor(49.5) = 49 drops the central atom
    CHECK(exact_cdf(100, 0.0, -0.5, 0.5) == 0.0);
}

TEST_CASE("exact cdf against the regularized incomplete beta") {
    // P(X <= k) = I_{1-p}(n-k, k+1), an independent evaluation route.
    rng::Philox gen(2024, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(gen.next_unit() * 2000);
        const long long k = static_cast<long long>(gen.next_unit() * n);
        const double p = 0.01 + 0.98 * gen.next_unit();
        const double ours = exact_cdf_k(n, k, p);
        const double ref =
            (k >= n) ? 1.0
                     : boost::math::ibeta(static_cast<double>(n - k), static_cast<double>(k + 1),
                                          1.0 - p);
        // Deep tails underflow in different places; compare with a tiny
        // absolute floor alongside the relative band.
        CHECK(std::abs(ours - ref) <= 5e-12 * std::max(std::abs(ours), std::abs(ref)) + 1e-290);
    }

    // Large n spot checks.
    CHECK(exact_cdf_k(1000000, 500000, 0.5) ==
          doctest::Approx(boost::math::ibeta(500000.0, 500001.0, 0.5)).epsilon(1e-10));
    CHECK(exact_cdf_k(1000000, 499000, 0.5) ==
          doctest::Approx(boost::math::ibeta(501000.0, 499001.0, 0.5)).epsilon(1e-10));
}

TEST_CASE("exact cdf monotonicity") {
    for (int k = 0; k < 20; ++k)
        CHECK(exact_cdf_k(20, k, 0.37) < exact_cdf_k(20, k + 1, 0.37));
    // Non-increasing in p at fixed threshold.
    double prev = 1.0;
    for (double p = 0.05; p < 1.0; p += 0.05) {
        const double v = exact_cdf_k(50, 25, p);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
}

TEST_CASE("sawtooth") {
    CHECK(sawtooth(2.5) == doctest::Approx(0.0));
    CHECK(sawtooth(2.2) == doctest::Approx(0.3));
    CHECK(sawtooth(3.0) == doctest::Approx(-0.5));
    CHECK(sawtooth(0.0) == doctest::Approx(-0.5));
    CHECK(sawtooth(-1.25) == doctest::Approx(-0.25));
    // Periodic with |S| <= 1/2.
    for (double x : {0.1, 0.37, 0.5, 0.9, 0.999}) {
        CHECK(sawtooth(x + 1.0) == doctest::Approx(sawtooth(x)).epsilon(1e-12));
        CHECK(sawtooth(x + 7.0) == doctest::Approx(sawtooth(x)).epsilon(1e-12));
        CHECK(std::abs(sawtooth(x)) <= 0.5);
    }
}

TEST_CASE("normal cdf and pdf") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
    CHECK(normal_cdf(1.0) == doctest::Approx(0.841344746068543).epsilon(1e-12));
    CHECK(normal_cdf(-1.0) == doctest::Approx(1.0 - 0.841344746068543).epsilon(1e-12));
    CHECK(normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-14));
    CHECK(normal_pdf(2.0) == doctest::Approx(std::exp(-2.0) * 0.3989422804014327).epsilon(1e-13));
}

TEST_CASE("edgeworth expansion: structure at the symmetric point") {
    // p = 1/2 kills the skewness term; the value is Phi(x) plus the
    // sawtooth correction alone.
    const int n = 100;
    const auto e = edgeworth_cdf(n, 0.5, 0.0);
    const double expected = 0.5 + sawtooth(50.0) * normal_pdf(0.0) / (std::sqrt(100.0) * 0.5);
    CHECK(e.value == doctest::Approx(expected).epsilon(1e-14));
    CHECK(e.in_region);  // n sigma^2 = 25

    const auto tiny = edgeworth_cdf(50, 0.5, 0.0);
    CHECK_FALSE(tiny.in_region);  // 12.5 < 25

    // Large n: the correction shrinks like 1/sqrt(n).
    const auto big = edgeworth_cdf(10000, 0.5, 1.0);
    CHECK(std::abs(big.value - normal_cdf(1.0)) <= 0.02);
}

TEST_CASE("edgeworth expansion within the printed error bound") {
    // Hard theorem bound: |exact - expansion| <= error_bound whenever
    // n sigma^2 >= 25. The exact CDF is evaluated as the left limit at
    // integer thresholds (the expansion's sawtooth is left continuous).
    int inside = 0;
    for (int n : {200, 500, 1000, 5000}) {
        for (double p : {0.3, 0.5, 0.62}) {
            for (double x : {-2.0, -1.0, -0.35, 0.0, 0.7, 1.0, 2.0}) {
                const auto e = edgeworth_cdf(n, p, x);
                if (!e.in_region) continue;
                const double sigma = std::sqrt(p * (1.0 - p));
                const double t = n * p + x * std::sqrt(n) * sigma;
                const double exact =
                    exact_cdf_k(n, static_cast<long long>(std::ceil(t)) - 1, p);
                CHECK(std::abs(exact - e.value) <= e.error_bound);
                ++inside;
            }
        }
    }
    CHECK(inside >= 80);
}

TEST_CASE("cdf approximation: plug-in value and delta dependence") {
    // s = 0, d = 1/2, delta = 0: pi reduces to S(n/2), so the value is
    // 1/2 + phi(0) S(n/2) / (sqrt(n)/2).
    const auto a = cdf_approx(400, 0.5, 0.0, 0.0);
    CHECK(a.term.y_s == doctest::Approx(0.0));
    CHECK(a.term.pi_value == doctest::Approx(sawtooth(200.0)).epsilon(1e-14));
    CHECK(a.value ==
          doctest::Approx(0.5 + normal_pdf(0.0) * sawtooth(200.0) / 10.0).epsilon(1e-13));

    // The delta shift moves pi by (delta + sawtooth shift).
    const auto b0 = cdf_approx(400, 0.5, 0.0, 0.8);
    const auto b1 = cdf_approx(400, 0.5, -1.0, 0.8);
    const double shift = (sawtooth(200.0 - 1.0) - 1.0) - sawtooth(200.0);
    CHECK(b1.value - b0.value ==
          doctest::Approx(normal_pdf(b0.term.y_s) * shift / (std::sqrt(400.0) * 0.5))
              .epsilon(1e-12));

    CHECK_THROWS_AS(cdf_approx(100, 0.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(cdf_approx(100, 0.5, 0.0, 60.0), DomainError);  // d + s/sqrt(n) >= 1
}

TEST_CASE("cdf approximation tracks the exact cdf off the lattice") {
    // Residual envelope check on a lattice-avoiding grid: d = 0.5,
    // delta = 0.5 keeps nd + delta off the integers for even n.
    for (int n : {256, 1024, 4096}) {
        for (double s : {-1.5, -0.75, 0.0, 0.75, 1.5}) {
            const double u = 0.5 + s / std::sqrt(static_cast<double>(n));
            const auto a = cdf_approx(n, 0.5, 0.5, s);
            const double exact = exact_cdf(n, 0.5, 0.5, u);
            CHECK(std::abs(a.value - exact) <= a.error_envelope);
        }
    }
}

TEST_CASE("tail bounds") {
    CHECK(tail_bound_check(1024, 0.5, 0.0, 0.9, 3.0));
    CHECK(tail_bound_check(1024, 0.5, 0.0, 0.1, 3.0));
    CHECK(tail_bound_check(256, 0.5, 0.0, 0.9, 2.7));
    CHECK(tail_bound_check(1024, 0.4, 0.5, 0.75, 2.5));
    // The admissibility condition is sharp: at n = 256 the gap
    // sqrt(n)|u-d| = 6.4 sits below 3 sqrt(log 256) ~ 7.06.
    CHECK_THROWS_AS(tail_bound_check(256, 0.5, 0.0, 0.9, 3.0), DomainError);
    CHECK_THROWS_AS(tail_bound_check(256, 0.5, 0.0, 0.5, 3.0), DomainError);  // u = d
    CHECK_THROWS_AS(tail_bound_check(256, 0.5, 2.0, 0.9, 3.0), DomainError);  // delta
}

TEST_CASE("gaussian tail domination") {
    // Phi(-A/sigma_d) <= n^(-2 alpha^2)/alpha at A = alpha sqrt(log n),
    // alpha = 1, worst case sigma_d = 1/2.
    for (int n : {16, 64, 256, 1024, 4096}) {
        const double a = std::sqrt(std::log(static_cast<double>(n)));
        CHECK(normal_cdf(-a / 0.5) <= 1.0 / (static_cast<double>(n) * n));
    }
}

TEST_CASE("integral expansion: both sides agree to first order") {
    const auto w = Graphon::affine(0.0, 1.0);
    const auto one = [](double) { return 1.0; };
    const auto zero_fn = [](double) { return 0.0; };

    // G == 0 gives lhs = rhs = 0.
    const auto z = integral_expansion_check(w, zero_fn, zero_fn, 0.5, 0.0, 256);
    CHECK(z.lhs == doctest::Approx(0.0));
    CHECK(z.rhs == doctest::Approx(0.0));

    // G == 1, off-lattice delta: residual decays like n^(-1/4) or better.
    std::vector<double> residuals;
    for (int n : {256, 1024, 4096}) {
        const auto r = integral_expansion_check(w, one, zero_fn, 0.3, 0.5, n);
        residuals.push_back(std::abs(r.residual));
        CHECK(std::abs(r.residual) < 1.0);
    }
    CHECK(residuals.back() < residuals.front());
    // Log-log slope over the sweep comfortably negative.
    const double slope = std::log(residuals.back() / residuals.front()) /
                         std::log(4096.0 / 256.0);
    CHECK(slope < -0.2);

    // Window flag: tight product kernel at the center satisfies the
    // asymptotic window; the affine kernel near the degree boundary fails.
    const auto wp = Graphon::product(0.1);
    const auto ok = integral_expansion_check(wp, one, zero_fn, 0.5, 0.0, 4096);
    CHECK(ok.window_ok);
    const auto tight = integral_expansion_check(w, one, zero_fn, 0.3, 0.5, 256);
    CHECK_FALSE(tight.window_ok);

    // Hard domain errors.
    CHECK_THROWS_AS(integral_expansion_check(w, one, zero_fn, 1.5, 0.0, 256), DomainError);
    CHECK_THROWS_AS(integral_expansion_check(w, one, zero_fn, 0.5, 3.0, 256), DomainError);
    const Graphon plain([](double x, double y) { return (x + y) / 2.0; }, "plain");
    CHECK_THROWS_AS(integral_expansion_check(plain, one, zero_fn, 0.5, 0.0, 256),
                    PreconditionError);
}

TEST_SUITE_END();
