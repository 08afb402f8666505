#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "graphon/errors.hpp"

namespace graphon {

// A finite simple graph on the vertex set [p] = {1, ..., p}. Edges are
// unordered pairs stored normalized (i < j) and sorted; adjacency is also
// kept as packed bit rows so counting kernels can intersect neighborhoods
// with word-wide ANDs.
//
// Immutable after construction; safe to share across threads.
class SimpleGraph {
public:
    SimpleGraph() = default;  // empty handle, 0 vertices
    explicit SimpleGraph(int num_vertices);
    SimpleGraph(int num_vertices, std::vector<std::pair<int, int>> edges);

    int num_vertices() const { return p_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool has_edge(int i, int j) const;
    int degree(int i) const;

    // Packed adjacency row of vertex i (1-based): bit (j-1) of word (j-1)/64
    // is set iff {i,j} is an edge.
    std::span<const std::uint64_t> row(int i) const;
    int words_per_row() const { return words_per_row_; }

    bool operator==(const SimpleGraph& other) const {
        return p_ == other.p_ && edges_ == other.edges_;
    }

    // Named graphs used throughout tests and experiments.
    static SimpleGraph empty(int p);
    static SimpleGraph complete(int p);  // K_p
    static SimpleGraph path(int p);      // P_p, edges {i, i+1}
    static SimpleGraph cycle(int p);     // C_p, p >= 3

    // Edge-list text format: first line "p m", then m lines "i j"
    // (1-based, whitespace separated).
    static SimpleGraph read_edge_list(std::istream& in);
    static SimpleGraph read_edge_list_file(const std::string& path);
    void write_edge_list(std::ostream& out) const;

private:
    void build_rows();

    int p_ = 0;
    int words_per_row_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::uint64_t> adj_;
};

// The graph (F |><| F')(q, q'): disjoint union of F and F' with vertex q' of
// F' identified to vertex q of F. Vertices of F keep their labels; the other
// vertices of F' are relabeled v(F)+1, ..., v(F)+v(F')-1 in increasing
// order. Parallel edges collapse, so the result is simple.
SimpleGraph join(const SimpleGraph& f, const SimpleGraph& fprime, int q, int qprime);

// All supergraphs F' >= F on the same vertex set, each paired with
// e(F') - e(F) for inclusion-exclusion sign bookkeeping. The first entry is
// F itself, the last is K_p. Throws ExplosionGuard when more than
// max_missing_edges edges are absent from F (2^k output blow-up).
std::vector<std::pair<SimpleGraph, int>> supergraphs(const SimpleGraph& f,
                                                     int max_missing_edges = 20);

}  // namespace graphon
