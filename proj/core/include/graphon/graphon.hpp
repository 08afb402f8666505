#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "graphon/quadrature.hpp"

namespace graphon {

// Analytic degree data for kernels where the integrals are known in closed
// form: D(x), its first two derivatives, and the inverse of D. Any entry may
// be absent; operations fall back to quadrature / finite differences /
// bisection.
struct AnalyticDegree {
    std::function<double(double)> d;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
    std::function<double(double)> d_inverse;
};

struct RegularityFlags {
    bool is_c3 = false;
    // Present when the kernel satisfies the degree-regularity condition
    // W <= 1 - eps0, D >= eps0, D' > 0 (checked on a grid for non-builtins;
    // interior grid margin tolerates kernels attaining 0/1 on the boundary).
    std::optional<double> epsilon0;
};

struct RegularityReport {
    double max_asymmetry = 0.0;
    double min_kernel = 0.0;
    double max_kernel = 0.0;
    double min_degree = 0.0;
    double min_degree_slope = 0.0;  // min of (D(x_{i+1})-D(x_i))/dx over the grid
    bool symmetric = false;
    bool in_range = false;
    bool condi_ok = false;  // only meaningful when epsilon0 was requested
};

// A graphon: symmetric measurable W: [0,1]^2 -> [0,1], plus whatever
// analytic structure the construction site knows about. Evaluators must be
// pure; the object is immutable and shareable across threads.
class Graphon {
public:
    using Kernel = std::function<double(double, double)>;

    // verify_grid > 0 runs the grid regularity check at construction and
    // throws DomainError on symmetry/range violations; 0 skips (trusted
    // analytic constructions use 0 internally).
    explicit Graphon(Kernel kernel, std::string name = "custom",
                     std::optional<AnalyticDegree> analytic = std::nullopt,
                     RegularityFlags flags = {}, int verify_grid = 128);

    double operator()(double x, double y) const { return kernel_(x, y); }

    const std::string& name() const { return name_; }
    const std::optional<AnalyticDegree>& analytic_degree() const { return analytic_; }
    const RegularityFlags& regularity() const { return flags_; }

    // Kernel sampled at the nodes of the Gauss-Legendre rule of the given
    // order, row-major; cached per order.
    std::shared_ptr<const std::vector<double>> node_grid(int order) const;

    // Built-in family. Every builtin carries full analytic degree data.
    static Graphon constant(double p);
    // a + b(x+y)/2 with a >= 0, b > 0, a+b <= 1. The boundary case a = 0,
    // b = 1 is the reference kernel W(x,y) = (x+y)/2.
    static Graphon affine(double a, double b);
    // eps0 + (1-2eps0)xy with eps0 in (0,1/2).
    static Graphon product(double eps0);
    static Graphon from_expression(const std::string& source,
                                   std::optional<double> epsilon0 = std::nullopt);

private:
    Kernel kernel_;
    std::string name_;
    std::optional<AnalyticDegree> analytic_;
    RegularityFlags flags_;
    struct GridCache;
    std::shared_ptr<GridCache> grids_;
};

// D(x) = \int_0^1 W(x,y) dy, analytic when available, else Gauss-Legendre.
double degree(const Graphon& w, double x, const QuadratureSpec& q = {});

// D'(x): analytic, else a central difference of the quadrature degree
// (h = 1e-5, accurate to ~1e-10 for C^3 kernels).
double degree_derivative(const Graphon& w, double x, const QuadratureSpec& q = {});

// D''(x): analytic, else second central difference (h = 1e-4).
double degree_second_derivative(const Graphon& w, double x, const QuadratureSpec& q = {});

// x with D(x) = d, via the analytic inverse or bisection (tol 1e-12, 200
// iterations). Requires an invertible degree: analytic inverse present, or
// the epsilon0 regularity flag certifying D' > 0.
double degree_inverse(const Graphon& w, double d, const QuadratureSpec& q = {});

// Grid check of symmetry (tol 1e-12), range, and, when eps0 is given, the
// degree-regularity condition. A sampling check, not a proof.
RegularityReport check_regularity(const Graphon& w, int grid = 512,
                                  std::optional<double> eps0 = std::nullopt);

}  // namespace graphon
