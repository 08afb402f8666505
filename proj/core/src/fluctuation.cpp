#include "graphon/fluctuation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_set>
#include <utility>

#include "graphon/density.hpp"
#include "graphon/errors.hpp"
#include "graphon/hom_count.hpp"
#include "graphon/rng.hpp"

namespace graphon {

namespace {

struct Kahan {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        double y = v - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

std::vector<double> zero_vector(int d) { return std::vector<double>(static_cast<std::size_t>(d), 0.0); }

double require_value(const TestFunction& g, const std::vector<double>& x) {
    if (!g.value) throw PreconditionError("test function has no value callback");
    return g.value(x);
}

}  // namespace

TestFunction TestFunction::identity() {
    TestFunction g;
    g.dim = 1;
    g.smoothness = Smoothness::kC2;
    g.value = [](const std::vector<double>& x) { return x[0]; };
    g.gradient = [](const std::vector<double>&) { return std::vector<double>{1.0}; };
    return g;
}

TestFunction TestFunction::constant(double c, int dim) {
    if (dim < 1) throw DomainError("TestFunction::constant: dim must be positive");
    TestFunction g;
    g.dim = dim;
    g.smoothness = Smoothness::kC2;
    g.value = [c](const std::vector<double>&) { return c; };
    g.gradient = [dim](const std::vector<double>&) { return zero_vector(dim); };
    return g;
}

TestFunction TestFunction::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw DomainError("TestFunction::polynomial: no coefficients");
    TestFunction g;
    g.dim = 1;
    g.smoothness = Smoothness::kC2;
    g.value = [coeffs](const std::vector<double>& x) {
        double v = 0.0;
        for (std::size_t j = coeffs.size(); j-- > 0;) v = v * x[0] + coeffs[j];
        return v;
    };
    g.gradient = [coeffs](const std::vector<double>& x) {
        double v = 0.0;
        for (std::size_t j = coeffs.size(); j-- > 1;)
            v = v * x[0] + coeffs[j] * static_cast<double>(j);
        return std::vector<double>{v};
    };
    return g;
}

TestFunction TestFunction::indicator(double threshold) {
    TestFunction g;
    g.dim = 1;
    g.smoothness = Smoothness::kC0;
    g.thresholds = {threshold};
    g.value = [threshold](const std::vector<double>& x) {
        return x[0] <= threshold ? 1.0 : 0.0;
    };
    return g;
}

TestFunction TestFunction::linear(std::vector<double> a) {
    if (a.empty()) throw DomainError("TestFunction::linear: no coefficients");
    TestFunction g;
    g.dim = static_cast<int>(a.size());
    g.smoothness = Smoothness::kC2;
    g.value = [a](const std::vector<double>& x) {
        double v = 0.0;
        for (std::size_t m = 0; m < a.size(); ++m) v += a[m] * x[m];
        return v;
    };
    g.gradient = [a](const std::vector<double>&) { return a; };
    return g;
}

void check_gradient(const TestFunction& g, std::uint64_t seed, int points, double tol) {
    if (!g.value) throw PreconditionError("check_gradient: test function has no value callback");
    if (!g.gradient) throw PreconditionError("check_gradient: test function has no gradient");
    if (points < 1) throw DomainError("check_gradient: points must be positive");
    const int d = g.dim;
    const double h = 1e-4;
    rng::Philox gen(rng::derive(seed, rng::hash_tag("gradient-check")), 0);
    std::vector<double> x(static_cast<std::size_t>(d));
    for (int pt = 0; pt < points; ++pt) {
        // interior points so the central stencil stays inside [0,1]^d
        for (int j = 0; j < d; ++j) x[j] = 0.05 + 0.9 * gen.next_unit();
        std::vector<double> grad = g.gradient(x);
        if (static_cast<int>(grad.size()) != d)
            throw DomainError("check_gradient: gradient dimension mismatch");
        for (int j = 0; j < d; ++j) {
            const double keep = x[j];
            x[j] = keep + h;
            const double up = g.value(x);
            x[j] = keep - h;
            const double down = g.value(x);
            x[j] = keep;
            const double fd = (up - down) / (2.0 * h);
            if (std::abs(fd - grad[j]) > tol * std::max(1.0, std::abs(grad[j])))
                throw DomainError("check_gradient: gradient disagrees with finite differences");
        }
    }
}

// ---- empirical measure ----

GammaEstimate gamma_n(const MotifFamily& family, const TestFunction& g,
                      const SampledGraph& G, std::uint64_t alpha_budget,
                      std::uint64_t seed) {
    const int p = family.vertex_count();
    const int k = family.labels().size();
    const int d = family.size();
    if (g.dim != d) throw DomainError("gamma_n: test function dimension != family size");
    const int n = G.n;
    if (n <= p) throw DomainError("gamma_n: host graph must have more vertices than the motifs");
    if (alpha_budget < 1) throw DomainError("gamma_n: alpha_budget must be positive");

    const double norm = uint128_to_double(falling_factorial(n - k, p - k));
    const double g0 = require_value(g, zero_vector(d));
    std::vector<double> tilde(static_cast<std::size_t>(d));
    auto value_at = [&](const std::vector<int>& alpha) {
        auto [hat, count0] = rooted_counts(family.motifs()[0], G.graph, alpha);
        if (!hat) return g0;  // the whole family shares the labeled subgraph
        tilde[0] = uint128_to_double(count0) / norm;
        for (int m = 1; m < d; ++m)
            tilde[m] = uint128_to_double(rooted_counts(family.motifs()[m], G.graph, alpha).second) / norm;
        return g.value(tilde);
    };

    const std::uint64_t total = word_count(n, k);
    Kahan acc;
    if (total <= alpha_budget) {
        WordSequence seq(n, k);
        while (const std::vector<int>* alpha = seq.next()) acc.add(value_at(*alpha));
        return {acc.sum / static_cast<double>(total), true, total};
    }

    // Subsample without replacement: reject repeated words through a packed
    // hash. 21 bits per character bounds the packing, comfortably past any
    // host this library can sample.
    if (k > 3) throw ExplosionGuard("gamma_n: subsampling supports at most 3 labels");
    if (n >= (1 << 21)) throw ExplosionGuard("gamma_n: host too large for word packing");
    rng::Philox gen(rng::derive(seed, rng::hash_tag("alpha-subsample")), 0);
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t reject = std::numeric_limits<std::uint64_t>::max() -
                                 std::numeric_limits<std::uint64_t>::max() % bound;
    auto draw_vertex = [&]() {
        for (;;) {
            std::uint64_t r = gen.next_u64();
            if (r < reject) return static_cast<int>(r % bound) + 1;
        }
    };
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(alpha_budget) * 2);
    std::vector<int> alpha(static_cast<std::size_t>(k));
    std::uint64_t used = 0;
    while (used < alpha_budget) {
        bool distinct = true;
        for (int i = 0; i < k; ++i) {
            alpha[i] = draw_vertex();
            for (int j = 0; j < i; ++j) distinct = distinct && alpha[j] != alpha[i];
        }
        if (!distinct) continue;
        std::uint64_t key = 0;
        for (int i = 0; i < k; ++i) key = (key << 21) | static_cast<std::uint64_t>(alpha[i]);
        if (!seen.insert(key).second) continue;
        acc.add(value_at(alpha));
        ++used;
    }
    return {acc.sum / static_cast<double>(alpha_budget), false, alpha_budget};
}

namespace {

// Preimages of the jump thresholds of g under x -> tilde_t_x, for the
// one-label one-motif case: grid scan for sign changes, then bisection.
// The integrand of gamma_limit is discontinuous exactly there.
std::vector<double> threshold_cuts(const LabeledMotif& motif, const TestFunction& g,
                                   const Graphon& w, const QuadratureSpec& q) {
    std::vector<double> cuts;
    if (g.thresholds.empty() || g.dim != 1) return cuts;
    auto tilde_at = [&](double x) {
        return t_x_rooted(motif, w, std::vector<double>{x}, q).tilde;
    };
    const int grid = 256;
    std::vector<double> val(grid + 1);
    for (int i = 0; i <= grid; ++i) val[i] = tilde_at(static_cast<double>(i) / grid);
    for (double c : g.thresholds) {
        for (int i = 0; i < grid; ++i) {
            const double a = val[i] - c;
            const double b = val[i + 1] - c;
            if (a == 0.0) {
                cuts.push_back(static_cast<double>(i) / grid);
                continue;
            }
            if (a * b < 0.0) {
                double lo = static_cast<double>(i) / grid;
                double hi = static_cast<double>(i + 1) / grid;
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if ((tilde_at(mid) - c) * a > 0.0)
                        lo = mid;
                    else
                        hi = mid;
                }
                cuts.push_back(0.5 * (lo + hi));
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    return cuts;
}

}  // namespace

double gamma_limit(const MotifFamily& family, const TestFunction& g, const Graphon& w,
                   const QuadratureSpec& q) {
    q.validate();
    const int k = family.labels().size();
    const int d = family.size();
    if (g.dim != d) throw DomainError("gamma_limit: test function dimension != family size");
    const double g0 = require_value(g, zero_vector(d));

    if (k == 0) {
        std::vector<double> t(static_cast<std::size_t>(d));
        for (int m = 0; m < d; ++m) t[m] = t_graphon(family.motifs()[m].graph(), w, q);
        return g.value(t);
    }

    std::vector<double> tilde(static_cast<std::size_t>(d));
    auto measure = [&](const std::vector<double>& x) {
        double hat = 0.0;
        for (int m = 0; m < d; ++m) {
            RootedDensity r = t_x_rooted(family.motifs()[m], w, x, q);
            if (m == 0) hat = r.hat;
            tilde[m] = r.tilde;
        }
        return std::pair<double, double>(hat, hat * g.value(tilde));
    };

    if (k == 1) {
        std::vector<double> cuts = threshold_cuts(family.motifs()[0], g, w, q);
        const double value = integrate_split(
            [&](double x) { return measure(std::vector<double>{x}).second; }, cuts,
            q.nodes_per_dim);
        const double hat_int = integrate_split(
            [&](double x) { return measure(std::vector<double>{x}).first; }, cuts,
            q.nodes_per_dim);
        return value + (1.0 - hat_int) * g0;
    }

    if (k > 3) throw ExplosionGuard("gamma_limit: more than 3 labels");
    const GaussLegendre& rule = gauss_legendre(q.nodes_per_dim);
    const int nn = static_cast<int>(rule.nodes.size());
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    std::vector<double> x(static_cast<std::size_t>(k));
    Kahan value;
    Kahan hat_int;
    for (;;) {
        double weight = 1.0;
        for (int j = 0; j < k; ++j) {
            weight *= rule.weights[idx[j]];
            x[j] = rule.nodes[idx[j]];
        }
        auto [hat, hg] = measure(x);
        value.add(weight * hg);
        hat_int.add(weight * hat);
        int j = k - 1;
        while (j >= 0 && ++idx[j] == nn) idx[j--] = 0;
        if (j < 0) break;
    }
    return value.sum + (1.0 - hat_int.sum) * g0;
}

// ---- CLT variance ----

namespace {

// Rooted (hat, tilde) at arbitrary label coordinates. The variance inner
// loops hit two shapes constantly: fully labeled motifs (hat only) and free
// vertices forming an independent set (each free coordinate integrates on
// its own against its labeled neighbors). Those run inline on the rule;
// anything denser goes through the full elimination.
std::pair<double, double> rooted_parts(const LabeledMotif& motif, const Graphon& w,
                                       const std::vector<double>& coords,
                                       const QuadratureSpec& q, const GaussLegendre& rule) {
    const SimpleGraph& f = motif.graph();
    const Word& ell = motif.labels();
    const int p = f.num_vertices();
    const int k = ell.size();
    std::vector<int> pos(static_cast<std::size_t>(p) + 1, -1);
    for (int i = 1; i <= k; ++i) pos[ell.at(i)] = i - 1;

    double hat = 1.0;
    bool independent = true;
    for (auto [a, b] : f.edges()) {
        if (pos[a] >= 0 && pos[b] >= 0)
            hat *= w(coords[pos[a]], coords[pos[b]]);
        else if (pos[a] < 0 && pos[b] < 0)
            independent = false;
    }
    if (p == k) return {hat, 1.0};
    if (!independent) {
        RootedDensity r = t_x_rooted(motif, w, coords, q);
        return {r.hat, r.tilde};
    }
    double tilde = 1.0;
    const int nn = static_cast<int>(rule.nodes.size());
    for (int v = 1; v <= p; ++v) {
        if (pos[v] >= 0) continue;
        double s = 0.0;
        for (int j = 0; j < nn; ++j) {
            double prod = 1.0;
            for (int u = 1; u <= p; ++u)
                if (f.has_edge(v, u)) prod *= w(rule.nodes[j], coords[pos[u]]);
            s += rule.weights[j] * prod;
        }
        tilde *= s;
    }
    return {hat, tilde};
}

struct UContext {
    const MotifFamily* family = nullptr;
    const TestFunction* g = nullptr;
    const Graphon* w = nullptr;
    QuadratureSpec q;
    int k = 0;
    int d = 0;
    int p = 0;
    const GaussLegendre* rule = nullptr;
    double g0 = 0.0;
    // tensor grid over [0,1]^k: weights, coordinates, grad g(tilde_t_x)
    std::vector<double> grid_weight;
    std::vector<std::vector<double>> grid_x;
    std::vector<std::vector<double>> grid_grad;
    // family relabeled with each free vertex appended to the label word
    std::vector<std::vector<LabeledMotif>> extended;
};

UContext build_context(const MotifFamily& family, const TestFunction& g, const Graphon& w,
                       const QuadratureSpec& q) {
    UContext c;
    c.family = &family;
    c.g = &g;
    c.w = &w;
    c.q = q;
    c.k = family.labels().size();
    c.d = family.size();
    c.p = family.vertex_count();
    c.rule = &gauss_legendre(q.nodes_per_dim);
    c.g0 = g.value(zero_vector(c.d));

    const int nn = static_cast<int>(c.rule->nodes.size());
    std::vector<int> idx(static_cast<std::size_t>(c.k), 0);
    std::vector<double> x(static_cast<std::size_t>(c.k));
    std::vector<double> tilde(static_cast<std::size_t>(c.d));
    for (;;) {
        double weight = 1.0;
        for (int j = 0; j < c.k; ++j) {
            weight *= c.rule->weights[idx[j]];
            x[j] = c.rule->nodes[idx[j]];
        }
        for (int m = 0; m < c.d; ++m)
            tilde[m] = t_x_rooted(family.motifs()[m], w, x, q).tilde;
        c.grid_weight.push_back(weight);
        c.grid_x.push_back(x);
        c.grid_grad.push_back(g.gradient(tilde));
        if (c.k == 0) break;
        int j = c.k - 1;
        while (j >= 0 && ++idx[j] == nn) idx[j--] = 0;
        if (j < 0) break;
    }

    const std::vector<int>& ell = family.labels().chars();
    for (int v = 1; v <= c.p; ++v) {
        if (family.labels().contains(v)) continue;
        std::vector<int> longer = ell;
        longer.push_back(v);
        std::vector<LabeledMotif> row;
        row.reserve(static_cast<std::size_t>(c.d));
        for (int m = 0; m < c.d; ++m)
            row.emplace_back(family.motifs()[m].graph(), Word(longer));
        c.extended.push_back(std::move(row));
    }
    return c;
}

// The two sums of the variance integrand at a fixed outer coordinate u:
// the label substitution sum and the free-vertex gradient sum.
std::pair<double, double> u_statistic_parts(const UContext& c, double u) {
    const MotifFamily& family = *c.family;
    const TestFunction& g = *c.g;
    std::vector<double> tilde(static_cast<std::size_t>(c.d));

    // substitution sum: coordinate i pinned at u, the rest integrated
    double substitution = 0.0;
    std::vector<double> coords(static_cast<std::size_t>(std::max(c.k, 1)));
    for (int i = 0; i < c.k; ++i) {
        const int rest = c.k - 1;
        const int nn = static_cast<int>(c.rule->nodes.size());
        std::vector<int> idx(static_cast<std::size_t>(rest), 0);
        for (;;) {
            double weight = 1.0;
            int slot = 0;
            for (int j = 0; j < c.k; ++j) {
                if (j == i) {
                    coords[j] = u;
                } else {
                    weight *= c.rule->weights[idx[slot]];
                    coords[j] = c.rule->nodes[idx[slot]];
                    ++slot;
                }
            }
            double hat = 0.0;
            for (int m = 0; m < c.d; ++m) {
                auto [h, t] = rooted_parts(family.motifs()[m], *c.w, coords, c.q, *c.rule);
                if (m == 0) hat = h;
                tilde[m] = t;
            }
            substitution += weight * hat * (g.value(tilde) - c.g0);
            if (rest == 0) break;
            int j = rest - 1;
            while (j >= 0 && ++idx[j] == nn) idx[j--] = 0;
            if (j < 0) break;
        }
    }

    // gradient sum: one extra label at u, paired against grad g on the grid
    double gradient = 0.0;
    std::vector<double> ext_coords(static_cast<std::size_t>(c.k) + 1);
    ext_coords[c.k] = u;
    for (const std::vector<LabeledMotif>& row : c.extended) {
        for (std::size_t cell = 0; cell < c.grid_x.size(); ++cell) {
            for (int j = 0; j < c.k; ++j) ext_coords[j] = c.grid_x[cell][j];
            double dot = 0.0;
            for (int m = 0; m < c.d; ++m) {
                auto [h, t] = rooted_parts(row[m], *c.w, ext_coords, c.q, *c.rule);
                dot += h * t * c.grid_grad[cell][m];
            }
            gradient += c.grid_weight[cell] * dot;
        }
    }
    return {substitution, gradient};
}

double sample_variance(const std::vector<double>& v) {
    const std::size_t m = v.size();
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(m);
    double s2 = 0.0;
    for (double x : v) s2 += (x - mean) * (x - mean);
    return s2 / static_cast<double>(m - 1);
}

}  // namespace

VarianceReport sigma2_clt(const MotifFamily& family, const TestFunction& g, const Graphon& w,
                          const QuadratureSpec& q, const CltOptions& opt) {
    q.validate();
    if (!g.value) throw PreconditionError("sigma2_clt: test function has no value callback");
    if (!g.gradient) throw PreconditionError("sigma2_clt: the CLT variance needs a gradient");
    if (g.dim != family.size())
        throw DomainError("sigma2_clt: test function dimension != family size");
    if (family.labels().size() > 2)
        throw ExplosionGuard("sigma2_clt: more than 2 labels");
    if (opt.u_order < 2) throw ConfigError("sigma2_clt: u_order must be >= 2");
    if (!opt.deterministic_u && opt.u_draws < 2)
        throw ConfigError("sigma2_clt: u_draws must be >= 2");
    check_gradient(g, /*seed=*/17, /*points=*/100);

    UContext ctx = build_context(family, g, w, q);
    VarianceReport rep;

    if (opt.deterministic_u) {
        const GaussLegendre& ur = gauss_legendre(opt.u_order);
        double m_s = 0.0, m_g = 0.0, m_t = 0.0;
        double s_s = 0.0, s_g = 0.0, s_t = 0.0;
        for (std::size_t j = 0; j < ur.nodes.size(); ++j) {
            auto [sub, grad] = u_statistic_parts(ctx, ur.nodes[j]);
            const double tot = sub + grad;
            const double wt = ur.weights[j];
            m_s += wt * sub;
            m_g += wt * grad;
            m_t += wt * tot;
            s_s += wt * sub * sub;
            s_g += wt * grad * grad;
            s_t += wt * tot * tot;
        }
        rep.sigma2 = std::max(0.0, s_t - m_t * m_t);
        rep.substitution_var = std::max(0.0, s_s - m_s * m_s);
        rep.gradient_var = std::max(0.0, s_g - m_g * m_g);
        rep.mc_error = 0.0;
        return rep;
    }

    const std::uint64_t sub_seed = rng::derive(opt.seed, rng::hash_tag("clt-outer"));
    const std::size_t m = static_cast<std::size_t>(opt.u_draws);
    std::vector<double> subs(m), grads(m), totals(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double u = rng::unit_at(sub_seed, j);
        auto [sub, grad] = u_statistic_parts(ctx, u);
        subs[j] = sub;
        grads[j] = grad;
        totals[j] = sub + grad;
    }
    rep.sigma2 = sample_variance(totals);
    rep.substitution_var = sample_variance(subs);
    rep.gradient_var = sample_variance(grads);
    // standard error of the sample variance through the fourth central moment
    double mean = 0.0;
    for (double x : totals) mean += x;
    mean /= static_cast<double>(m);
    double m4 = 0.0;
    for (double x : totals) {
        const double dx = x - mean;
        m4 += dx * dx * dx * dx;
    }
    m4 /= static_cast<double>(m);
    const double md = static_cast<double>(m);
    const double var_of_var =
        (m4 - (md - 3.0) / (md - 1.0) * rep.sigma2 * rep.sigma2) / md;
    rep.mc_error = std::sqrt(std::max(0.0, var_of_var));
    return rep;
}

// ---- covariance kernels ----

namespace {

// sum over roots q of the rooted density t_u(F^q, W), the score function of
// the motif's density fluctuation
double root_sum(const SimpleGraph& f, const Graphon& w, double u, const QuadratureSpec& q,
                const GaussLegendre& rule) {
    double s = 0.0;
    for (int r = 1; r <= f.num_vertices(); ++r) {
        LabeledMotif motif(f, Word(std::vector<int>{r}));
        auto [hat, tilde] = rooted_parts(motif, w, std::vector<double>{u}, q, rule);
        s += hat * tilde;
    }
    return s;
}

double covariance_by_quadrature(const std::function<double(double)>& a,
                                const std::function<double(double)>& b, int order) {
    const GaussLegendre& rule = gauss_legendre(order);
    double ma = 0.0, mb = 0.0, mab = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double va = a(rule.nodes[j]);
        const double vb = b(rule.nodes[j]);
        ma += rule.weights[j] * va;
        mb += rule.weights[j] * vb;
        mab += rule.weights[j] * va * vb;
    }
    return mab - ma * mb;
}

}  // namespace

double k_inj(const SimpleGraph& f, const SimpleGraph& fprime, const Graphon& w,
             const QuadratureSpec& q, KInjMethod method) {
    q.validate();
    const int p = f.num_vertices();
    const int pp = fprime.num_vertices();
    if (method == KInjMethod::kJoinGraph) {
        Kahan sum;
        for (int q1 = 1; q1 <= p; ++q1)
            for (int q2 = 1; q2 <= pp; ++q2)
                sum.add(t_graphon(join(f, fprime, q1, q2), w, q));
        return sum.sum - static_cast<double>(p) * static_cast<double>(pp) *
                             t_graphon(f, w, q) * t_graphon(fprime, w, q);
    }
    const GaussLegendre& rule = gauss_legendre(q.nodes_per_dim);
    return covariance_by_quadrature(
        [&](double u) { return root_sum(f, w, u, q, rule); },
        [&](double u) { return root_sum(fprime, w, u, q, rule); }, q.nodes_per_dim);
}

double k_ind(const SimpleGraph& f1, const SimpleGraph& f2, const Graphon& w,
             const QuadratureSpec& q) {
    q.validate();
    const auto sup1 = supergraphs(f1);
    const auto sup2 = supergraphs(f2);
    const double p1 = f1.num_vertices();
    const double p2 = f2.num_vertices();
    std::vector<double> t1(sup1.size()), t2(sup2.size());
    for (std::size_t i = 0; i < sup1.size(); ++i) t1[i] = t_graphon(sup1[i].first, w, q);
    for (std::size_t j = 0; j < sup2.size(); ++j) t2[j] = t_graphon(sup2[j].first, w, q);
    Kahan total;
    for (std::size_t i = 0; i < sup1.size(); ++i) {
        const int e1 = f1.num_edges() + sup1[i].second;
        for (std::size_t j = 0; j < sup2.size(); ++j) {
            const int e2 = f2.num_edges() + sup2[j].second;
            Kahan bracket;
            for (int q1 = 1; q1 <= f1.num_vertices(); ++q1)
                for (int q2 = 1; q2 <= f2.num_vertices(); ++q2)
                    bracket.add(t_graphon(join(sup1[i].first, sup2[j].first, q1, q2), w, q));
            const double term = bracket.sum - p1 * p2 * t1[i] * t2[j];
            total.add(((e1 + e2) % 2 == 0) ? term : -term);
        }
    }
    return total.sum;
}

double k_ind_cov(const SimpleGraph& f1, const SimpleGraph& f2, const Graphon& w,
                 const QuadratureSpec& q) {
    q.validate();
    const auto sup1 = supergraphs(f1);
    const auto sup2 = supergraphs(f2);
    const GaussLegendre& rule = gauss_legendre(q.nodes_per_dim);
    auto score = [&](const std::vector<std::pair<SimpleGraph, int>>& sup, int base_edges,
                     double u) {
        double s = 0.0;
        for (const auto& [graph, added] : sup) {
            const double value = root_sum(graph, w, u, q, rule);
            s += ((base_edges + added) % 2 == 0) ? value : -value;
        }
        return s;
    };
    return covariance_by_quadrature(
        [&](double u) { return score(sup1, f1.num_edges(), u); },
        [&](double u) { return score(sup2, f2.num_edges(), u); }, q.nodes_per_dim);
}

// ---- quantum graphs ----

namespace {

void check_quantum(const std::vector<double>& a, const std::vector<SimpleGraph>& motifs) {
    if (a.empty()) throw DomainError("quantum graph: no coefficients");
    if (a.size() != motifs.size())
        throw DomainError("quantum graph: coefficient and motif counts differ");
}

}  // namespace

double quantum_density(const std::vector<double>& a, const std::vector<SimpleGraph>& motifs,
                       const SimpleGraph& g) {
    check_quantum(a, motifs);
    double s = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m) s += a[m] * t_inj(motifs[m], g);
    return s;
}

double quantum_density(const std::vector<double>& a, const std::vector<SimpleGraph>& motifs,
                       const Graphon& w, const QuadratureSpec& q) {
    check_quantum(a, motifs);
    double s = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m) s += a[m] * t_graphon(motifs[m], w, q);
    return s;
}

double sigma2_quantum(const std::vector<double>& a, const std::vector<SimpleGraph>& motifs,
                      const Graphon& w, const QuadratureSpec& q) {
    check_quantum(a, motifs);
    const std::size_t d = a.size();
    double s = 0.0;
    for (std::size_t m = 0; m < d; ++m) {
        for (std::size_t mm = m; mm < d; ++mm) {
            const double cov = k_inj(motifs[m], motifs[mm], w, q);
            s += (mm == m ? 1.0 : 2.0) * a[m] * a[mm] * cov;
        }
    }
    return s;
}

double er_second_order_variance(const SimpleGraph& f, double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("er_second_order_variance: p must lie in (0,1)");
    }
    const int e = f.num_edges();
    if (e < 1) {
        throw DomainError("er_second_order_variance: motif needs an edge");
    }
    return 2.0 * e * e * std::pow(p, 2 * e - 1) * (1.0 - p);
}

}  // namespace graphon
