#include <doctest.h>

#include <cmath>

#include "graphon/errors.hpp"
#include "graphon/expr.hpp"
#include "graphon/graphon.hpp"

using namespace graphon;

TEST_SUITE_BEGIN("graphon");

TEST_CASE("affine builtin degree data") {
    const auto w = Graphon::affine(0.0, 1.0);  // W(x,y) = (x+y)/2
    CHECK(w(0.2, 0.6) == doctest::Approx(0.4));
    CHECK(w(1.0, 1.0) == doctest::Approx(1.0));

    // D(x) = 1/4 + x/2.
    CHECK(degree(w, 0.0) == doctest::Approx(0.25));
    CHECK(degree(w, 0.5) == doctest::Approx(0.5));
    CHECK(degree(w, 1.0) == doctest::Approx(0.75));
    CHECK(degree_derivative(w, 0.3) == doctest::Approx(0.5));
    CHECK(degree_second_derivative(w, 0.3) == doctest::Approx(0.0));
    CHECK(degree_inverse(w, 0.5) == doctest::Approx(0.5));
    CHECK(degree_inverse(w, 0.3) == doctest::Approx(0.1));
    CHECK_THROWS_AS(degree_inverse(w, 0.9), DomainError);

    CHECK(w.regularity().is_c3);
    REQUIRE(w.regularity().epsilon0.has_value());
    CHECK(*w.regularity().epsilon0 > 0.0);
    CHECK(*w.regularity().epsilon0 < 0.5);

    const auto shifted = Graphon::affine(0.2, 0.5);  // 0.2 + 0.5(x+y)/2
    CHECK(degree(shifted, 0.0) == doctest::Approx(0.2 + 0.125));
    CHECK(degree_derivative(shifted, 0.7) == doctest::Approx(0.25));
    CHECK(degree_inverse(shifted, degree(shifted, 0.4)) == doctest::Approx(0.4));

    CHECK_THROWS_AS(Graphon::affine(-0.1, 0.5), DomainError);
    CHECK_THROWS_AS(Graphon::affine(0.5, 0.6), DomainError);
    CHECK_THROWS_AS(Graphon::affine(0.5, 0.0), DomainError);
}

TEST_CASE("constant and product builtins") {
    const auto half = Graphon::constant(0.5);
    CHECK(half(0.1, 0.9) == doctest::Approx(0.5));
    CHECK(degree(half, 0.3) == doctest::Approx(0.5));
    CHECK(degree_derivative(half, 0.3) == doctest::Approx(0.0));
    CHECK(half.regularity().is_c3);
    CHECK_FALSE(half.regularity().epsilon0.has_value());  // D' = 0, not degree-regular
    CHECK_THROWS_AS(Graphon::constant(1.5), DomainError);

    const auto prod = Graphon::product(0.1);
    // W = 0.1 + 0.8xy, D(x) = 0.1 + 0.4x.
    CHECK(prod(0.5, 0.5) == doctest::Approx(0.1 + 0.8 * 0.25));
    CHECK(degree(prod, 0.0) == doctest::Approx(0.1));
    CHECK(degree(prod, 1.0) == doctest::Approx(0.5));
    CHECK(degree_derivative(prod, 0.2) == doctest::Approx(0.4));
    CHECK(degree_inverse(prod, 0.3) == doctest::Approx(0.5));
    CHECK_THROWS_AS(Graphon::product(0.0), DomainError);
    CHECK_THROWS_AS(Graphon::product(0.5), DomainError);
}

TEST_CASE("quadrature fallbacks match analytic values") {
    // Same kernel as affine(0,1) but built without analytic degree data.
    const Graphon w([](double x, double y) { return (x + y) / 2.0; }, "plain");
    CHECK(degree(w, 0.3) == doctest::Approx(0.25 + 0.15).epsilon(1e-12));
    CHECK(degree_derivative(w, 0.3) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(degree_second_derivative(w, 0.3) == doctest::Approx(0.0).epsilon(1e-5));

    // Bisection inverse needs the regularity certificate. The kernel tops
    // out near 1, so only a small epsilon0 is actually satisfied.
    CHECK_THROWS_AS(degree_inverse(w, 0.5), PreconditionError);
    RegularityFlags flags;
    flags.epsilon0 = 9e-4;
    const Graphon wr([](double x, double y) { return (x + y) / 2.0; }, "plain", std::nullopt,
                     flags);
    CHECK(degree_inverse(wr, 0.5) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(degree_inverse(wr, 0.3) == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("construction validates symmetry and range") {
    CHECK_THROWS_AS(Graphon([](double x, double y) { return x - y + 0.5; }, "asym"),
                    DomainError);
    CHECK_THROWS_AS(Graphon([](double x, double y) { return x + y; }, "big"), DomainError);
    CHECK_THROWS_AS(Graphon([](double x, double y) { return x * y - 0.5; }, "neg"),
                    DomainError);
    // verify_grid = 0 skips the check entirely.
    CHECK_NOTHROW(Graphon([](double x, double y) { return x - y + 0.5; }, "asym",
                          std::nullopt, {}, 0));
}

TEST_CASE("check_regularity report") {
    // The affine kernel approaches 1 at the corner, so W <= 1 - eps0 holds
    // only for eps0 below the grid margin.
    const auto w = Graphon::affine(0.0, 1.0);
    const auto rep = check_regularity(w, 256, 1e-3);
    CHECK(rep.symmetric);
    CHECK(rep.in_range);
    CHECK(rep.condi_ok);
    CHECK(rep.min_degree_slope == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(rep.min_degree == doctest::Approx(0.25).epsilon(1e-2));
    CHECK(rep.max_kernel <= 1.0 + 1e-9);

    // Too large an eps0 fails the kernel-bound side.
    const auto bad = check_regularity(w, 256, 0.05);
    CHECK_FALSE(bad.condi_ok);

    // The product kernel is bounded away from 0 and 1 by construction.
    const auto prod_rep = check_regularity(Graphon::product(0.1), 256, 0.1);
    CHECK(prod_rep.condi_ok);

    const auto flat = check_regularity(Graphon::constant(0.5), 128, 0.1);
    CHECK(flat.symmetric);
    CHECK_FALSE(flat.condi_ok);  // zero degree slope
}

TEST_CASE("expression-backed kernels") {
    const auto w = Graphon::from_expression("(x + y) / 2");
    CHECK(w(0.2, 0.6) == doctest::Approx(0.4));
    CHECK(degree(w, 0.5) == doctest::Approx(0.5).epsilon(1e-12));

    const auto e = Graphon::from_expression("exp(-(x - y)^2) / 2");
    CHECK(e(0.3, 0.3) == doctest::Approx(0.5));
    CHECK(e(0.0, 1.0) == doctest::Approx(std::exp(-1.0) / 2.0));

    CHECK_THROWS_AS(Graphon::from_expression("x - y"), DomainError);      // asymmetric
    CHECK_THROWS_AS(Graphon::from_expression("x + y + 1"), DomainError);  // out of range
    CHECK_THROWS_AS(Graphon::from_expression("x +"), ConfigError);        // parse error

    const auto with_eps = Graphon::from_expression("0.1 + 0.8 * x * y", 0.1);
    REQUIRE(with_eps.regularity().epsilon0.has_value());
    CHECK(degree_inverse(with_eps, 0.3) == doctest::Approx(0.5).epsilon(1e-9));
    // Claimed eps0 the kernel does not satisfy is rejected.
    CHECK_THROWS_AS(Graphon::from_expression("0.1 + 0.8 * x * y", 0.2), DomainError);
}

TEST_CASE("expression parser evaluates and reports errors") {
    const Expr e = Expr::parse("min(x, y) + max(x, y) - abs(x - y)");
    // min+max-|diff| = 2*min.
    CHECK(e.eval(0.3, 0.8) == doctest::Approx(0.6));
    CHECK(Expr::parse("pi").eval(0, 0) == doctest::Approx(3.14159265358979323846));
    CHECK(Expr::parse("2^-2").eval(0, 0) == doctest::Approx(0.25));
    CHECK(Expr::parse("2^3^2").eval(0, 0) == doctest::Approx(512.0));  // right associative
    CHECK(Expr::parse("-x^2").eval(3, 0) == doctest::Approx(-9.0));    // minus binds last
    CHECK(Expr::parse("sqrt(x*y)").eval(0.25, 0.25) == doctest::Approx(0.25));
    CHECK_THROWS_AS(Expr::parse("foo(x)"), ConfigError);
    CHECK_THROWS_AS(Expr::parse("min(x)"), ConfigError);
    CHECK_THROWS_AS(Expr::parse("(x"), ConfigError);
    CHECK_THROWS_AS(Expr::parse(""), ConfigError);
}

TEST_SUITE_END();
