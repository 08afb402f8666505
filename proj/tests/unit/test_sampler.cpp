#include <doctest.h>

#include <cmath>
#include <vector>

#include "graphon/binomial.hpp"
#include "graphon/density.hpp"
#include "graphon/errors.hpp"
#include "graphon/hom_count.hpp"
#include "graphon/sampler.hpp"

using namespace graphon;

TEST_SUITE_BEGIN("sampler");

TEST_CASE("degenerate kernels give complete and empty graphs") {
    const auto ones = Graphon::constant(1.0);
    const auto g1 = sample(ones, 6, 42);
    CHECK(g1.graph == SimpleGraph::complete(6));
    CHECK(g1.n == 6);
    CHECK(g1.latent.size() == 6);
    for (double x : g1.latent) {
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }

    const auto zeros = Graphon::constant(0.0);
    CHECK(sample(zeros, 6, 42).graph == SimpleGraph::empty(6));
}

TEST_CASE("same seed, same graph; different seed, different graph") {
    const auto w = Graphon::affine(0.0, 1.0);
    const auto a = sample(w, 40, 7);
    const auto b = sample(w, 40, 7);
    CHECK(a.graph == b.graph);
    CHECK(a.latent == b.latent);

    const auto c = sample(w, 40, 8);
    CHECK_FALSE(a.graph == c.graph);
}

TEST_CASE("latents can be pinned") {
    const auto w = Graphon::constant(0.5);
    const std::vector<double> x = {0.1, 0.5, 0.9};
    const auto g = sample_with_latents(w, x, 3);
    CHECK(g.latent == x);
    CHECK(g.n == 3);

    // Edges are a function of (seed, i, j) alone, so re-supplying the same
    // latents reproduces the graph.
    CHECK(sample_with_latents(w, x, 3).graph == g.graph);

    CHECK_THROWS_AS(sample_with_latents(w, {0.1, 1.5}, 3), DomainError);
    CHECK_THROWS_AS(sample_with_latents(w, {}, 3), DomainError);
}

TEST_CASE("edge density concentrates at t(K2, W)") {
    const auto w = Graphon::affine(0.0, 1.0);
    const int n = 300;
    const auto g = sample(w, n, 123);
    const double edges = static_cast<double>(g.graph.num_edges());
    const double pairs = n * (n - 1) / 2.0;
    const double density = edges / pairs;
    // Var(t_K2 estimate) ~ Var over pairs plus latent variance; 4 sigma of
    // the dominant latent term 4 Var(D(U)) / n = (1/12) / n.
    const double sigma = std::sqrt((1.0 / 12.0) / n + 0.25 / pairs);
    CHECK(std::abs(density - 0.5) < 4.0 * sigma);
}

TEST_CASE("conditional edge law matches W at pinned latents") {
    // With all latents pinned, edge indicators are independent Bernoulli
    // W(x_i, x_j); count edges from one vertex to a block of others and
    // compare to the exact binomial CDF value at the observed count.
    const auto w = Graphon::affine(0.0, 1.0);
    const int n = 2000;
    std::vector<double> x(n, 0.0);
    x[0] = 1.0;  // W(1, 0) = 1/2 against every other vertex
    const auto g = sample_with_latents(w, x, 99);
    const int k = g.graph.degree(1);
    // Two-sided exact binomial test at 1e-6: reject only far in the tails.
    const double lo = exact_cdf_k(n - 1, k, 0.5);
    const double hi = 1.0 - exact_cdf_k(n - 1, k - 1, 0.5);
    CHECK(std::min(lo, hi) > 1e-6);
}

TEST_CASE("latent sequence is a prefix-stable uniform stream") {
    const auto w = Graphon::constant(0.5);
    const auto small = sample(w, 10, 5);
    const auto big = sample(w, 20, 5);
    for (int i = 0; i < 10; ++i) CHECK(small.latent[i] == big.latent[i]);

    // Chi-square on 10 bins over 4000 latents: 4 sigma of chi2(9).
    const auto many = sample(w, 4000, 17);
    std::vector<int> bins(10, 0);
    for (double u : many.latent) ++bins[static_cast<int>(u * 10.0)];
    double chi2 = 0.0;
    for (int b : bins) chi2 += (b - 400.0) * (b - 400.0) / 400.0;
    CHECK(chi2 < 9.0 + 4.0 * std::sqrt(18.0));
}

TEST_CASE("triangle frequency tracks the kernel density") {
    const auto w = Graphon::affine(0.0, 1.0);
    const auto g = sample(w, 220, 31);
    const double t3 = t_inj(SimpleGraph::complete(3), g.graph);
    // sigma^2(t_inj(K3)) ~ 9 K(K3,K3)/n with K(K3,K3) = 857/15360.
    const double sigma = std::sqrt(9.0 * (857.0 / 15360.0) / 220.0);
    CHECK(std::abs(t3 - 5.0 / 32.0) < 4.0 * sigma);
}

TEST_CASE("normalized degrees") {
    const auto w = Graphon::constant(1.0);
    const auto g = sample(w, 5, 1);
    const auto deg = degree_sequence(g);
    REQUIRE(deg.size() == 5);
    for (double d : deg) CHECK(d == doctest::Approx(1.0));
    CHECK_THROWS_AS(degree_sequence(sample(w, 1, 1)), DomainError);
}

TEST_SUITE_END();
