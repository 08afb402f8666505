#include "graphon/graphon.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "graphon/errors.hpp"
#include "graphon/expr.hpp"

namespace graphon {

struct Graphon::GridCache {
    std::mutex mu;
    std::map<int, std::shared_ptr<const std::vector<double>>> by_order;
};

Graphon::Graphon(Kernel kernel, std::string name, std::optional<AnalyticDegree> analytic,
                 RegularityFlags flags, int verify_grid)
    : kernel_(std::move(kernel)),
      name_(std::move(name)),
      analytic_(std::move(analytic)),
      flags_(flags),
      grids_(std::make_shared<GridCache>()) {
    if (!kernel_) throw DomainError("Graphon: null kernel");
    if (flags_.epsilon0 && !(*flags_.epsilon0 > 0.0 && *flags_.epsilon0 < 0.5))
        throw DomainError("Graphon: epsilon0 must lie in (0, 1/2)");
    if (verify_grid > 0) {
        const RegularityReport r = check_regularity(*this, verify_grid, flags_.epsilon0);
        if (!r.symmetric) throw DomainError("Graphon: kernel is not symmetric");
        if (!r.in_range) throw DomainError("Graphon: kernel leaves [0,1]");
        if (flags_.epsilon0 && !r.condi_ok)
            throw DomainError("Graphon: degree-regularity condition fails for epsilon0");
    }
}

std::shared_ptr<const std::vector<double>> Graphon::node_grid(int order) const {
    {
        std::lock_guard<std::mutex> lock(grids_->mu);
        auto it = grids_->by_order.find(order);
        if (it != grids_->by_order.end()) return it->second;
    }
    const auto& rule = gauss_legendre(order);
    auto grid = std::make_shared<std::vector<double>>();
    grid->resize(static_cast<std::size_t>(order) * order);
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j)
            (*grid)[static_cast<std::size_t>(i) * order + j] =
                kernel_(rule.nodes[static_cast<std::size_t>(i)],
                        rule.nodes[static_cast<std::size_t>(j)]);
    std::lock_guard<std::mutex> lock(grids_->mu);
    auto [it, inserted] = grids_->by_order.emplace(order, grid);
    return it->second;
}

Graphon Graphon::constant(double p) {
    if (p < 0.0 || p > 1.0) throw DomainError("constant graphon: p outside [0,1]");
    AnalyticDegree deg;
    deg.d = [p](double) { return p; };
    deg.d1 = [](double) { return 0.0; };
    deg.d2 = [](double) { return 0.0; };
    RegularityFlags flags;
    flags.is_c3 = true;
    return Graphon([p](double, double) { return p; }, "constant", deg, flags, 0);
}

Graphon Graphon::affine(double a, double b) {
    if (a < 0.0 || b <= 0.0 || a + b > 1.0)
        throw DomainError("affine graphon: need a >= 0, b > 0, a+b <= 1");
    AnalyticDegree deg;
    deg.d = [a, b](double x) { return a + 0.25 * b + 0.5 * b * x; };
    deg.d1 = [b](double) { return 0.5 * b; };
    deg.d2 = [](double) { return 0.0; };
    deg.d_inverse = [a, b](double d) { return (d - a - 0.25 * b) / (0.5 * b); };
    RegularityFlags flags;
    flags.is_c3 = true;
    // W <= 1 - eps and D >= eps hold on the interior; the boundary cases
    // (a = 0 or a + b = 1) attain 0/1 only at corners, so certify with the
    // margin a grid of 512 cells leaves to the boundary.
    const double margin = 0.5 / 512.0;
    const double eps = std::min({a + 0.25 * b + 0.5 * b * margin,  // min grid degree
                                 1.0 - (a + b) + b * margin,       // 1 - max grid kernel
                                 0.49});
    if (eps > 0.0) flags.epsilon0 = eps;
    return Graphon([a, b](double x, double y) { return a + 0.5 * b * (x + y); }, "affine",
                   deg, flags, 0);
}

Graphon Graphon::product(double eps0) {
    if (!(eps0 > 0.0 && eps0 < 0.5))
        throw DomainError("product graphon: eps0 outside (0, 1/2)");
    const double c = 1.0 - 2.0 * eps0;
    AnalyticDegree deg;
    deg.d = [eps0, c](double x) { return eps0 + 0.5 * c * x; };
    deg.d1 = [c](double) { return 0.5 * c; };
    deg.d2 = [](double) { return 0.0; };
    deg.d_inverse = [eps0, c](double d) { return (d - eps0) / (0.5 * c); };
    RegularityFlags flags;
    flags.is_c3 = true;
    flags.epsilon0 = eps0;
    return Graphon([eps0, c](double x, double y) { return eps0 + c * x * y; }, "product",
                   deg, flags, 0);
}

Graphon Graphon::from_expression(const std::string& source, std::optional<double> epsilon0) {
    Expr e = Expr::parse(source);
    RegularityFlags flags;
    flags.epsilon0 = epsilon0;
    return Graphon([e](double x, double y) { return e.eval(x, y); }, "expr:" + source,
                   std::nullopt, flags, 512);
}

double degree(const Graphon& w, double x, const QuadratureSpec& q) {
    if (x < 0.0 || x > 1.0) throw DomainError("degree: x outside [0,1]");
    if (w.analytic_degree() && w.analytic_degree()->d) return w.analytic_degree()->d(x);
    const double v = integrate([&](double y) { return w(x, y); }, 0.0, 1.0, q.nodes_per_dim);
    return std::min(1.0, std::max(0.0, v));
}

double degree_derivative(const Graphon& w, double x, const QuadratureSpec& q) {
    if (w.analytic_degree() && w.analytic_degree()->d1) return w.analytic_degree()->d1(x);
    const double h = 1e-5;
    const double lo = std::max(0.0, x - h), hi = std::min(1.0, x + h);
    return (degree(w, hi, q) - degree(w, lo, q)) / (hi - lo);
}

double degree_second_derivative(const Graphon& w, double x, const QuadratureSpec& q) {
    if (w.analytic_degree() && w.analytic_degree()->d2) return w.analytic_degree()->d2(x);
    const double h = 1e-4;
    const double x0 = std::min(std::max(x, h), 1.0 - h);
    return (degree(w, x0 + h, q) - 2.0 * degree(w, x0, q) + degree(w, x0 - h, q)) / (h * h);
}

double degree_inverse(const Graphon& w, double d, const QuadratureSpec& q) {
    if (w.analytic_degree() && w.analytic_degree()->d_inverse) {
        const double x = w.analytic_degree()->d_inverse(d);
        if (x < -1e-9 || x > 1.0 + 1e-9)
            throw DomainError("degree_inverse: value outside the range of D");
        return std::min(1.0, std::max(0.0, x));
    }
    if (!w.regularity().epsilon0)
        throw PreconditionError(
            "degree_inverse: needs an invertible degree (analytic inverse or the "
            "epsilon0 regularity flag)");
    const double d0 = degree(w, 0.0, q), d1 = degree(w, 1.0, q);
    if (d < d0 - 1e-12 || d > d1 + 1e-12)
        throw DomainError("degree_inverse: value outside [D(0), D(1)]");
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        (degree(w, mid, q) < d ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

RegularityReport check_regularity(const Graphon& w, int grid, std::optional<double> eps0) {
    if (grid < 2) throw ConfigError("check_regularity: grid too small");
    RegularityReport r;
    r.min_kernel = 1.0;
    r.max_kernel = 0.0;
    r.min_degree = 1.0;
    // Cell midpoints: (i + 1/2)/grid stays clear of the boundary, which the
    // reference kernels touch only at corners.
    std::vector<double> xs(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) xs[static_cast<std::size_t>(i)] = (i + 0.5) / grid;

    for (int i = 0; i < grid; ++i) {
        for (int j = i; j < grid; ++j) {
            const double a = w(xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(j)]);
            const double b = w(xs[static_cast<std::size_t>(j)], xs[static_cast<std::size_t>(i)]);
            r.max_asymmetry = std::max(r.max_asymmetry, std::abs(a - b));
            r.min_kernel = std::min({r.min_kernel, a, b});
            r.max_kernel = std::max({r.max_kernel, a, b});
        }
    }
    r.symmetric = r.max_asymmetry <= 1e-12;
    r.in_range = r.min_kernel >= -1e-9 && r.max_kernel <= 1.0 + 1e-9;

    QuadratureSpec q;
    double prev = 0.0;
    r.min_degree_slope = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        const double d = degree(w, xs[static_cast<std::size_t>(i)], q);
        r.min_degree = std::min(r.min_degree, d);
        if (i > 0)
            r.min_degree_slope =
                std::min(r.min_degree_slope, (d - prev) * grid);
        prev = d;
    }
    if (eps0) {
        r.condi_ok = r.max_kernel <= 1.0 - *eps0 + 1e-9 && r.min_degree >= *eps0 - 1e-9 &&
                     r.min_degree_slope > 0.0;
    }
    return r;
}

}  // namespace graphon
