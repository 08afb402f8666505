#include "graphon/density.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <string>

#include "graphon/rng.hpp"

namespace graphon {

namespace {

// ---------- variable elimination over the Gauss-Legendre grid ----------

struct Factor {
    std::vector<int> vars;  // ascending variable ids
    std::shared_ptr<const std::vector<double>> table;  // extent N per var, row-major
};

// Greedy min-degree elimination order on the variable interaction graph.
// Returns the order if every elimination cluster has at most max_width
// neighbors (generated tables of arity <= max_width), else nullopt.
std::optional<std::vector<int>> plan_order(int num_vars,
                                           std::vector<std::vector<char>> adj,
                                           int max_width) {
    std::vector<int> order;
    std::vector<char> live(static_cast<std::size_t>(num_vars), 1);
    for (int step = 0; step < num_vars; ++step) {
        int best = -1, best_deg = num_vars + 1;
        for (int v = 0; v < num_vars; ++v) {
            if (!live[static_cast<std::size_t>(v)]) continue;
            int deg = 0;
            for (int u = 0; u < num_vars; ++u)
                if (u != v && live[static_cast<std::size_t>(u)] &&
                    adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)])
                    ++deg;
            if (deg < best_deg) {
                best_deg = deg;
                best = v;
            }
        }
        if (best_deg > max_width) return std::nullopt;
        order.push_back(best);
        live[static_cast<std::size_t>(best)] = 0;
        // Eliminating `best` connects its live neighbors pairwise.
        std::vector<int> nbrs;
        for (int u = 0; u < num_vars; ++u)
            if (live[static_cast<std::size_t>(u)] &&
                adj[static_cast<std::size_t>(best)][static_cast<std::size_t>(u)])
                nbrs.push_back(u);
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                adj[static_cast<std::size_t>(nbrs[i])][static_cast<std::size_t>(nbrs[j])] = 1;
                adj[static_cast<std::size_t>(nbrs[j])][static_cast<std::size_t>(nbrs[i])] = 1;
            }
    }
    return order;
}

// Contracts the factor list to a scalar: eliminated variables are summed
// against the quadrature weights, so the result is the full tensor sum
// sum_{assignment} prod_f f * prod_v weight[v].
double run_elimination(std::vector<Factor> factors, const std::vector<int>& order,
                       const std::vector<double>& weights) {
    const int n = static_cast<int>(weights.size());
    double scalar = 1.0;
    for (int v : order) {
        std::vector<Factor> touching;
        std::vector<Factor> rest;
        for (auto& f : factors)
            (std::find(f.vars.begin(), f.vars.end(), v) != f.vars.end() ? touching : rest)
                .push_back(std::move(f));
        factors = std::move(rest);

        std::vector<int> out_vars;
        for (const auto& f : touching)
            for (int u : f.vars)
                if (u != v && std::find(out_vars.begin(), out_vars.end(), u) == out_vars.end())
                    out_vars.push_back(u);
        std::sort(out_vars.begin(), out_vars.end());

        // Strides of v and of each out_var inside each touching factor.
        struct Access {
            const double* data;
            long long v_stride;
            std::vector<std::pair<int, long long>> out_strides;  // (position in out_vars, stride)
        };
        std::vector<Access> access;
        access.reserve(touching.size());
        for (const auto& f : touching) {
            Access a;
            a.data = f.table->data();
            a.v_stride = 0;
            long long stride = 1;
            for (int k = static_cast<int>(f.vars.size()) - 1; k >= 0; --k) {
                const int var = f.vars[static_cast<std::size_t>(k)];
                if (var == v) {
                    a.v_stride = stride;
                } else {
                    const int pos = static_cast<int>(
                        std::find(out_vars.begin(), out_vars.end(), var) - out_vars.begin());
                    a.out_strides.emplace_back(pos, stride);
                }
                stride *= n;
            }
            access.push_back(std::move(a));
        }

        const int m = static_cast<int>(out_vars.size());
        long long out_size = 1;
        for (int k = 0; k < m; ++k) out_size *= n;

        auto out_table = std::make_shared<std::vector<double>>(
            static_cast<std::size_t>(out_size), 0.0);
        std::vector<int> digits(static_cast<std::size_t>(std::max(m, 1)), 0);
        for (long long idx = 0; idx < out_size; ++idx) {
            // Decode idx into the assignment of out_vars (row-major).
            long long rem = idx;
            for (int k = m - 1; k >= 0; --k) {
                digits[static_cast<std::size_t>(k)] = static_cast<int>(rem % n);
                rem /= n;
            }
            double acc = 0.0;
            // Base offsets for this assignment.
            for (int i = 0; i < n; ++i) {
                double prod = weights[static_cast<std::size_t>(i)];
                for (const auto& a : access) {
                    long long off = a.v_stride * i;
                    for (auto [pos, stride] : a.out_strides)
                        off += stride * digits[static_cast<std::size_t>(pos)];
                    prod *= a.data[off];
                }
                acc += prod;
            }
            (*out_table)[static_cast<std::size_t>(idx)] = acc;
        }

        if (m == 0) {
            scalar *= (*out_table)[0];
        } else {
            factors.push_back(Factor{std::move(out_vars), std::move(out_table)});
        }
    }
    // Variables are all eliminated; anything left is var-free.
    for (const auto& f : factors) scalar *= (*f.table)[0];
    return scalar;
}

// ---------- integrand assembly ----------

// Pairs (i, j) of FREE vertex ids plus per-pair tables; labeled pins enter
// as 1-var factors. `complement` switches an edge table from W to 1-W.
struct Assembly {
    int num_vars = 0;
    std::vector<Factor> factors;
    std::vector<std::vector<char>> adj;  // interaction graph
};

std::shared_ptr<const std::vector<double>> edge_table(const Graphon& w, int n,
                                                      bool complement) {
    auto grid = w.node_grid(n);
    if (!complement) return grid;
    auto t = std::make_shared<std::vector<double>>(*grid);
    for (double& v : *t) v = 1.0 - v;
    return t;
}

void add_pair_factor(Assembly& a, int u, int v,
                     std::shared_ptr<const std::vector<double>> table) {
    Factor f;
    f.vars = {std::min(u, v), std::max(u, v)};
    f.table = std::move(table);
    a.factors.push_back(std::move(f));
    a.adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
    a.adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
}

void add_pin_factor(Assembly& a, int u, const Graphon& w, double x, int n,
                    bool complement) {
    const auto& rule = gauss_legendre(n);
    auto t = std::make_shared<std::vector<double>>(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double val = w(rule.nodes[static_cast<std::size_t>(i)], x);
        (*t)[static_cast<std::size_t>(i)] = complement ? 1.0 - val : val;
    }
    Factor f;
    f.vars = {u};
    f.table = std::move(t);
    a.factors.push_back(std::move(f));
}

double contract_or_mc(const Assembly& a, const QuadratureSpec& q,
                      const std::function<double(rng::Philox&)>& mc_one,
                      std::uint64_t mc_stream, DensityEstimate* detail) {
    // Exact contraction whenever the elimination width stays within budget:
    // 3 by default (N^4 work per step), stretched to 4 for motifs the spec
    // of the call promises to evaluate by quadrature (v <= dim_switch).
    const int width_budget = a.num_vars <= q.dim_switch ? 4 : 3;
    const auto order = plan_order(a.num_vars, a.adj, width_budget);
    if (order) {
        const double v =
            run_elimination(a.factors, *order, gauss_legendre(q.nodes_per_dim).weights);
        if (detail) *detail = {v, 0.0, false};
        return v;
    }
    rng::Philox gen(q.mc_seed, mc_stream);
    double mean = 0.0, m2 = 0.0;
    for (long long s = 0; s < q.mc_samples; ++s) {
        const double val = mc_one(gen);
        const double delta = val - mean;
        mean += delta / static_cast<double>(s + 1);
        m2 += delta * (val - mean);
    }
    const double se = q.mc_samples > 1
                          ? std::sqrt(m2 / static_cast<double>(q.mc_samples - 1) /
                                      static_cast<double>(q.mc_samples))
                          : 0.0;
    if (detail) *detail = {mean, se, true};
    return mean;
}

std::uint64_t motif_stream(const SimpleGraph& f, const char* op) {
    std::string desc = op;
    desc += ':' + std::to_string(f.num_vertices());
    for (auto [i, j] : f.edges()) desc += ',' + std::to_string(i) + '-' + std::to_string(j);
    return rng::hash_tag(desc.c_str());
}

}  // namespace

double t_graphon(const SimpleGraph& f, const Graphon& w, const QuadratureSpec& q) {
    return t_graphon_detail(f, w, q).value;
}

DensityEstimate t_graphon_detail(const SimpleGraph& f, const Graphon& w,
                                 const QuadratureSpec& q) {
    q.validate();
    const int p = f.num_vertices();
    Assembly a;
    a.num_vars = p;
    a.adj.assign(static_cast<std::size_t>(p), std::vector<char>(static_cast<std::size_t>(p), 0));
    auto grid = edge_table(w, q.nodes_per_dim, false);
    for (auto [i, j] : f.edges()) add_pair_factor(a, i - 1, j - 1, grid);

    DensityEstimate detail;
    contract_or_mc(
        a, q,
        [&](rng::Philox& gen) {
            std::vector<double> x(static_cast<std::size_t>(p));
            for (double& xi : x) xi = gen.next_unit();
            double prod = 1.0;
            for (auto [i, j] : f.edges())
                prod *= w(x[static_cast<std::size_t>(i - 1)], x[static_cast<std::size_t>(j - 1)]);
            return prod;
        },
        motif_stream(f, "t"), &detail);
    return detail;
}

double t_ind_graphon(const SimpleGraph& f, const Graphon& w, const QuadratureSpec& q) {
    q.validate();
    const int p = f.num_vertices();
    Assembly a;
    a.num_vars = p;
    a.adj.assign(static_cast<std::size_t>(p), std::vector<char>(static_cast<std::size_t>(p), 0));
    auto grid = edge_table(w, q.nodes_per_dim, false);
    auto co_grid = edge_table(w, q.nodes_per_dim, true);
    for (int i = 1; i <= p; ++i)
        for (int j = i + 1; j <= p; ++j)
            add_pair_factor(a, i - 1, j - 1, f.has_edge(i, j) ? grid : co_grid);

    DensityEstimate detail;
    return contract_or_mc(
        a, q,
        [&](rng::Philox& gen) {
            std::vector<double> x(static_cast<std::size_t>(p));
            for (double& xi : x) xi = gen.next_unit();
            double prod = 1.0;
            for (int i = 1; i <= p; ++i)
                for (int j = i + 1; j <= p; ++j) {
                    const double val =
                        w(x[static_cast<std::size_t>(i - 1)], x[static_cast<std::size_t>(j - 1)]);
                    prod *= f.has_edge(i, j) ? val : 1.0 - val;
                }
            return prod;
        },
        motif_stream(f, "t_ind"), &detail);
}

RootedDensity t_x_rooted(const LabeledMotif& motif, const Graphon& w,
                         const std::vector<double>& x, const QuadratureSpec& q) {
    q.validate();
    const Word& ell = motif.labels();
    const int k = ell.size();
    if (static_cast<int>(x.size()) != k)
        throw DomainError("t_x_rooted: coordinate count does not match label count");
    for (double xi : x)
        if (xi < 0.0 || xi > 1.0) throw DomainError("t_x_rooted: coordinate outside [0,1]");

    const SimpleGraph& f = motif.graph();
    const int p = f.num_vertices();

    // Label position of each vertex (0 if free).
    std::vector<int> label_pos(static_cast<std::size_t>(p) + 1, 0);
    for (int i = 1; i <= k; ++i) label_pos[static_cast<std::size_t>(ell.at(i))] = i;

    RootedDensity out;
    out.hat = 1.0;
    for (auto [i, j] : f.edges())
        if (label_pos[static_cast<std::size_t>(i)] && label_pos[static_cast<std::size_t>(j)])
            out.hat *= w(x[static_cast<std::size_t>(label_pos[static_cast<std::size_t>(i)] - 1)],
                         x[static_cast<std::size_t>(label_pos[static_cast<std::size_t>(j)] - 1)]);

    // Free vertices get contiguous variable ids.
    std::vector<int> var_of(static_cast<std::size_t>(p) + 1, -1);
    int num_free = 0;
    for (int v = 1; v <= p; ++v)
        if (!label_pos[static_cast<std::size_t>(v)]) var_of[static_cast<std::size_t>(v)] = num_free++;

    Assembly a;
    a.num_vars = num_free;
    a.adj.assign(static_cast<std::size_t>(num_free),
                 std::vector<char>(static_cast<std::size_t>(num_free), 0));
    auto grid = edge_table(w, q.nodes_per_dim, false);
    for (auto [i, j] : f.edges()) {
        const int li = label_pos[static_cast<std::size_t>(i)];
        const int lj = label_pos[static_cast<std::size_t>(j)];
        if (li && lj) continue;  // already in hat
        if (!li && !lj) {
            add_pair_factor(a, var_of[static_cast<std::size_t>(i)],
                            var_of[static_cast<std::size_t>(j)], grid);
        } else {
            const int free_var = li ? var_of[static_cast<std::size_t>(j)]
                                    : var_of[static_cast<std::size_t>(i)];
            const double pin = li ? x[static_cast<std::size_t>(li - 1)]
                                  : x[static_cast<std::size_t>(lj - 1)];
            add_pin_factor(a, free_var, w, pin, q.nodes_per_dim, false);
        }
    }

    out.tilde = contract_or_mc(
        a, q,
        [&](rng::Philox& gen) {
            std::vector<double> xi(static_cast<std::size_t>(num_free));
            for (double& v : xi) v = gen.next_unit();
            double prod = 1.0;
            for (auto [i, j] : f.edges()) {
                const int li = label_pos[static_cast<std::size_t>(i)];
                const int lj = label_pos[static_cast<std::size_t>(j)];
                if (li && lj) continue;
                const double a_val = li ? x[static_cast<std::size_t>(li - 1)]
                                        : xi[static_cast<std::size_t>(
                                              var_of[static_cast<std::size_t>(i)])];
                const double b_val = lj ? x[static_cast<std::size_t>(lj - 1)]
                                        : xi[static_cast<std::size_t>(
                                              var_of[static_cast<std::size_t>(j)])];
                prod *= w(a_val, b_val);
            }
            return prod;
        },
        motif_stream(f, "t_rooted"), nullptr);

    out.t = out.hat * out.tilde;
    return out;
}

}  // namespace graphon
