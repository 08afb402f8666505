#include "graphon/hom_count.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace graphon {

double uint128_to_double(uint128 v) {
    return static_cast<double>(static_cast<long double>(v));
}

uint128 falling_factorial(int n, int p) {
    if (p < 0 || n < 0) throw DomainError("falling_factorial: negative argument");
    if (p > n) return 0;
    uint128 acc = 1;
    for (int i = 0; i < p; ++i) {
        const uint128 factor = static_cast<uint128>(n - i);
        if (factor != 0 && acc > ~uint128{0} / factor)
            throw ExplosionGuard("falling_factorial: 128-bit overflow");
        acc *= factor;
    }
    return acc;
}

namespace {

enum class Mode { kHom, kInj, kInd };

// Backtracking counter. `pinned[u]` (1-based motif vertex -> 1-based host
// vertex, 0 = free) fixes images up front; when pins are present only edges
// with at least one free endpoint are enforced (the pinned-pinned edges are
// the hat factor, checked by the caller).
class Counter {
public:
    Counter(const SimpleGraph& f, const SimpleGraph& g, Mode mode,
            const std::vector<int>& pinned)
        : f_(f), g_(g), mode_(mode), pinned_(pinned), n_(g.num_vertices()),
          words_(static_cast<std::size_t>(g.words_per_row())) {
        build_order();
        const std::size_t w = words_;
        full_.assign(w, 0);
        for (int v = 0; v < n_; ++v) full_[static_cast<std::size_t>(v / 64)] |=
            std::uint64_t{1} << (v % 64);
        used_.assign(w, 0);
        if (mode_ != Mode::kHom)
            for (int u = 1; u <= f_.num_vertices(); ++u)
                if (pinned_[static_cast<std::size_t>(u)])
                    set_bit(used_, pinned_[static_cast<std::size_t>(u)] - 1);
        cand_.assign(order_.size(), std::vector<std::uint64_t>(w));
        image_.assign(static_cast<std::size_t>(f_.num_vertices()) + 1, 0);
        for (int u = 1; u <= f_.num_vertices(); ++u)
            image_[static_cast<std::size_t>(u)] = pinned_[static_cast<std::size_t>(u)];
    }

    uint128 run() {
        if (order_.empty()) return 1;  // everything pinned
        count_ = 0;
        descend(0);
        return count_;
    }

private:
    static void set_bit(std::vector<std::uint64_t>& m, int v) {
        m[static_cast<std::size_t>(v / 64)] |= std::uint64_t{1} << (v % 64);
    }
    static void clear_bit(std::vector<std::uint64_t>& m, int v) {
        m[static_cast<std::size_t>(v / 64)] &= ~(std::uint64_t{1} << (v % 64));
    }

    // Free vertices, most-connected-first so candidate sets shrink early.
    void build_order() {
        const int p = f_.num_vertices();
        std::vector<char> placed(static_cast<std::size_t>(p) + 1, 0);
        for (int u = 1; u <= p; ++u)
            if (pinned_[static_cast<std::size_t>(u)]) placed[static_cast<std::size_t>(u)] = 1;
        for (;;) {
            int best = 0, best_key = -1;
            for (int u = 1; u <= p; ++u) {
                if (placed[static_cast<std::size_t>(u)]) continue;
                int placed_nbrs = 0;
                for (int v = 1; v <= p; ++v)
                    if (placed[static_cast<std::size_t>(v)] && f_.has_edge(u, v)) ++placed_nbrs;
                const int key = placed_nbrs * 64 + f_.degree(u);
                if (key > best_key) {
                    best_key = key;
                    best = u;
                }
            }
            if (!best) break;
            order_.push_back(best);
            placed[static_cast<std::size_t>(best)] = 1;
        }
    }

    void compute_candidates(std::size_t depth) {
        auto& cand = cand_[depth];
        const int u = order_[depth];
        cand = full_;
        if (mode_ != Mode::kHom)
            for (std::size_t w = 0; w < words_; ++w) cand[w] &= ~used_[w];
        for (int v = 1; v <= f_.num_vertices(); ++v) {
            const int img = image_[static_cast<std::size_t>(v)];
            if (!img || v == u) continue;
            if (f_.has_edge(u, v)) {
                const auto row = g_.row(img);
                for (std::size_t w = 0; w < words_; ++w) cand[w] &= row[w];
            } else if (mode_ == Mode::kInd) {
                const auto row = g_.row(img);
                for (std::size_t w = 0; w < words_; ++w) cand[w] &= ~row[w];
            }
        }
    }

    void descend(std::size_t depth) {
        compute_candidates(depth);
        const auto& cand = cand_[depth];
        if (depth + 1 == order_.size()) {
            uint128 leaves = 0;
            for (std::uint64_t w : cand) leaves += static_cast<unsigned>(std::popcount(w));
            count_ += leaves;
            return;
        }
        const int u = order_[depth];
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t bits = cand[w];
            while (bits) {
                const int v = static_cast<int>(w * 64) + std::countr_zero(bits);
                bits &= bits - 1;
                image_[static_cast<std::size_t>(u)] = v + 1;
                if (mode_ != Mode::kHom) set_bit(used_, v);
                descend(depth + 1);
                if (mode_ != Mode::kHom) clear_bit(used_, v);
            }
        }
        image_[static_cast<std::size_t>(u)] = 0;
    }

    const SimpleGraph& f_;
    const SimpleGraph& g_;
    Mode mode_;
    std::vector<int> pinned_;
    int n_;
    std::size_t words_;
    std::vector<int> order_;
    std::vector<std::uint64_t> full_, used_;
    std::vector<std::vector<std::uint64_t>> cand_;
    std::vector<int> image_;
    uint128 count_ = 0;
};

uint128 count_unrooted(const SimpleGraph& f, const SimpleGraph& g, Mode mode) {
    std::vector<int> no_pins(static_cast<std::size_t>(f.num_vertices()) + 1, 0);
    return Counter(f, g, mode, no_pins).run();
}

void require_host_size(const SimpleGraph& f, const SimpleGraph& g) {
    if (g.num_vertices() < f.num_vertices())
        throw SizeError("host graph has fewer vertices than the motif");
}

}  // namespace

uint128 count_hom(const SimpleGraph& f, const SimpleGraph& g) {
    return count_unrooted(f, g, Mode::kHom);
}

uint128 count_inj(const SimpleGraph& f, const SimpleGraph& g) {
    return count_unrooted(f, g, Mode::kInj);
}

uint128 count_ind(const SimpleGraph& f, const SimpleGraph& g) {
    return count_unrooted(f, g, Mode::kInd);
}

double t_hom(const SimpleGraph& f, const SimpleGraph& g) {
    const double denom = std::pow(static_cast<double>(g.num_vertices()), f.num_vertices());
    return uint128_to_double(count_hom(f, g)) / denom;
}

double t_inj(const SimpleGraph& f, const SimpleGraph& g) {
    require_host_size(f, g);
    return uint128_to_double(count_inj(f, g)) /
           uint128_to_double(falling_factorial(g.num_vertices(), f.num_vertices()));
}

double t_ind(const SimpleGraph& f, const SimpleGraph& g) {
    require_host_size(f, g);
    return uint128_to_double(count_ind(f, g)) /
           uint128_to_double(falling_factorial(g.num_vertices(), f.num_vertices()));
}

std::pair<bool, uint128> rooted_counts(const LabeledMotif& motif, const SimpleGraph& g,
                                       const std::vector<int>& alpha) {
    const SimpleGraph& f = motif.graph();
    const Word& ell = motif.labels();
    const int k = ell.size();
    const int n = g.num_vertices();
    if (static_cast<int>(alpha.size()) != k)
        throw DomainError("rooted count: root length does not match label count");
    std::vector<int> pinned(static_cast<std::size_t>(f.num_vertices()) + 1, 0);
    for (int i = 1; i <= k; ++i) {
        const int a = alpha[static_cast<std::size_t>(i - 1)];
        if (a < 1 || a > n) throw DomainError("rooted count: root vertex out of range");
        pinned[static_cast<std::size_t>(ell.at(i))] = a;
    }
    {
        std::vector<int> sorted = alpha;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw DomainError("rooted count: root vertices must be distinct");
    }

    bool hat = true;
    for (auto [i, j] : motif.labeled_edges())
        if (!g.has_edge(pinned[static_cast<std::size_t>(i)], pinned[static_cast<std::size_t>(j)])) {
            hat = false;
            break;
        }
    const uint128 tilde = Counter(f, g, Mode::kInj, pinned).run();
    return {hat, tilde};
}

RootedCount t_inj_rooted(const LabeledMotif& motif, const SimpleGraph& g, const Word& alpha) {
    require_host_size(motif.graph(), g);
    const int n = g.num_vertices();
    const int p = motif.graph().num_vertices();
    const int k = motif.num_labels();
    auto [hat, tilde] = rooted_counts(motif, g, alpha.chars());

    RootedCount out{motif, alpha};
    out.hat_y = hat;
    out.tilde_count = tilde;
    out.inj_count = hat ? tilde : 0;
    const double denom = uint128_to_double(falling_factorial(n - k, p - k));
    out.tilde_density = uint128_to_double(tilde) / denom;
    out.density = hat ? out.tilde_density : 0.0;
    return out;
}

OracleDensities oracle_densities(const SimpleGraph& f, const SimpleGraph& g) {
    const int p = f.num_vertices();
    const int n = g.num_vertices();
    if (p > 5 || n > 9)
        throw ExplosionGuard("oracle_densities: capped at v(F) <= 5, v(G) <= 9");

    long long hom = 0, inj = 0, ind = 0;
    std::vector<int> map(static_cast<std::size_t>(p), 1);
    for (;;) {
        bool edge_ok = true;
        for (auto [i, j] : f.edges())
            if (!g.has_edge(map[static_cast<std::size_t>(i - 1)],
                            map[static_cast<std::size_t>(j - 1)])) {
                edge_ok = false;
                break;
            }
        bool distinct = true;
        for (int i = 0; i < p && distinct; ++i)
            for (int j = i + 1; j < p; ++j)
                if (map[static_cast<std::size_t>(i)] == map[static_cast<std::size_t>(j)]) {
                    distinct = false;
                    break;
                }
        if (edge_ok) {
            ++hom;
            if (distinct) ++inj;
        }
        if (distinct && edge_ok) {
            bool non_adjacency = true;
            for (int i = 1; i <= p && non_adjacency; ++i)
                for (int j = i + 1; j <= p; ++j)
                    if (!f.has_edge(i, j) &&
                        g.has_edge(map[static_cast<std::size_t>(i - 1)],
                                   map[static_cast<std::size_t>(j - 1)])) {
                        non_adjacency = false;
                        break;
                    }
            if (non_adjacency) ++ind;
        }
        // Next map in the odometer order.
        int d = p - 1;
        while (d >= 0 && map[static_cast<std::size_t>(d)] == n) {
            map[static_cast<std::size_t>(d)] = 1;
            --d;
        }
        if (d < 0) break;
        ++map[static_cast<std::size_t>(d)];
    }

    OracleDensities out;
    const double np = std::pow(static_cast<double>(n), p);
    const double anp = uint128_to_double(falling_factorial(n, p));
    out.hom = static_cast<double>(hom) / np;
    out.inj = static_cast<double>(inj) / anp;
    out.ind = static_cast<double>(ind) / anp;
    return out;
}

}  // namespace graphon
