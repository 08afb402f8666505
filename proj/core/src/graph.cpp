#include "graphon/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace graphon {

SimpleGraph::SimpleGraph(int num_vertices) : SimpleGraph(num_vertices, {}) {}

SimpleGraph::SimpleGraph(int num_vertices, std::vector<std::pair<int, int>> edges)
    : p_(num_vertices), edges_(std::move(edges)) {
    if (p_ < 1) throw DomainError("SimpleGraph: vertex count must be positive");
    for (auto& [i, j] : edges_) {
        if (i == j) throw DomainError("SimpleGraph: self-loop");
        if (i < 1 || j < 1 || i > p_ || j > p_)
            throw DomainError("SimpleGraph: edge endpoint out of range");
        if (i > j) std::swap(i, j);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw DomainError("SimpleGraph: duplicate edge");
    build_rows();
}

void SimpleGraph::build_rows() {
    words_per_row_ = (p_ + 63) / 64;
    adj_.assign(static_cast<std::size_t>(p_) * words_per_row_, 0);
    for (auto [i, j] : edges_) {
        adj_[static_cast<std::size_t>(i - 1) * words_per_row_ + (j - 1) / 64] |=
            std::uint64_t{1} << ((j - 1) % 64);
        adj_[static_cast<std::size_t>(j - 1) * words_per_row_ + (i - 1) / 64] |=
            std::uint64_t{1} << ((i - 1) % 64);
    }
}

bool SimpleGraph::has_edge(int i, int j) const {
    if (i < 1 || j < 1 || i > p_ || j > p_)
        throw IndexError("SimpleGraph: vertex out of range");
    return (adj_[static_cast<std::size_t>(i - 1) * words_per_row_ + (j - 1) / 64] >>
            ((j - 1) % 64)) & 1;
}

int SimpleGraph::degree(int i) const {
    int d = 0;
    for (std::uint64_t w : row(i)) d += std::popcount(w);
    return d;
}

std::span<const std::uint64_t> SimpleGraph::row(int i) const {
    if (i < 1 || i > p_) throw IndexError("SimpleGraph: vertex out of range");
    return {adj_.data() + static_cast<std::size_t>(i - 1) * words_per_row_,
            static_cast<std::size_t>(words_per_row_)};
}

SimpleGraph SimpleGraph::empty(int p) { return SimpleGraph(p); }

SimpleGraph SimpleGraph::complete(int p) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= p; ++i)
        for (int j = i + 1; j <= p; ++j) edges.emplace_back(i, j);
    return SimpleGraph(p, std::move(edges));
}

SimpleGraph SimpleGraph::path(int p) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < p; ++i) edges.emplace_back(i, i + 1);
    return SimpleGraph(p, std::move(edges));
}

SimpleGraph SimpleGraph::cycle(int p) {
    if (p < 3) throw DomainError("cycle: needs at least 3 vertices");
    auto g = path(p);
    auto edges = g.edges();
    edges.emplace_back(1, p);
    return SimpleGraph(p, std::move(edges));
}

SimpleGraph SimpleGraph::read_edge_list(std::istream& in) {
    int p = 0, m = 0;
    if (!(in >> p >> m)) throw ConfigError("edge list: missing header \"p m\"");
    if (m < 0) throw ConfigError("edge list: negative edge count");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (int e = 0; e < m; ++e) {
        int i = 0, j = 0;
        if (!(in >> i >> j)) throw ConfigError("edge list: truncated edge lines");
        edges.emplace_back(i, j);
    }
    try {
        return SimpleGraph(p, std::move(edges));
    } catch (const DomainError& err) {
        throw ConfigError(std::string("edge list: ") + err.what());
    }
}

SimpleGraph SimpleGraph::read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("edge list: cannot open " + path);
    return read_edge_list(in);
}

void SimpleGraph::write_edge_list(std::ostream& out) const {
    out << p_ << ' ' << num_edges() << '\n';
    for (auto [i, j] : edges_) out << i << ' ' << j << '\n';
}

SimpleGraph join(const SimpleGraph& f, const SimpleGraph& fprime, int q, int qprime) {
    const int p = f.num_vertices();
    const int pp = fprime.num_vertices();
    if (q < 1 || q > p) throw IndexError("join: vertex of F out of range");
    if (qprime < 1 || qprime > pp) throw IndexError("join: vertex of F' out of range");

    // Relabel F': q' -> q, remaining vertices -> p+1, ... in increasing order.
    std::vector<int> relabel(static_cast<std::size_t>(pp) + 1, 0);
    int next = p;
    for (int v = 1; v <= pp; ++v) relabel[static_cast<std::size_t>(v)] = (v == qprime) ? q : ++next;

    std::vector<std::pair<int, int>> edges = f.edges();
    for (auto [i, j] : fprime.edges()) {
        int a = relabel[static_cast<std::size_t>(i)];
        int b = relabel[static_cast<std::size_t>(j)];
        if (a > b) std::swap(a, b);
        edges.emplace_back(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return SimpleGraph(p + pp - 1, std::move(edges));
}

std::vector<std::pair<SimpleGraph, int>> supergraphs(const SimpleGraph& f,
                                                     int max_missing_edges) {
    const int p = f.num_vertices();
    std::vector<std::pair<int, int>> missing;
    for (int i = 1; i <= p; ++i)
        for (int j = i + 1; j <= p; ++j)
            if (!f.has_edge(i, j)) missing.emplace_back(i, j);

    const int k = static_cast<int>(missing.size());
    if (k > max_missing_edges)
        throw ExplosionGuard("supergraphs: " + std::to_string(k) +
                             " missing edges exceeds cap of " +
                             std::to_string(max_missing_edges));

    std::vector<std::pair<SimpleGraph, int>> out;
    out.reserve(std::size_t{1} << k);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        std::vector<std::pair<int, int>> edges = f.edges();
        for (int b = 0; b < k; ++b)
            if ((mask >> b) & 1) edges.push_back(missing[static_cast<std::size_t>(b)]);
        out.emplace_back(SimpleGraph(p, std::move(edges)),
                         std::popcount(mask));
    }
    return out;
}

}  // namespace graphon
