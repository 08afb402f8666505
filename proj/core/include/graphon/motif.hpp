#pragma once

#include <vector>

#include "graphon/graph.hpp"
#include "graphon/words.hpp"

namespace graphon {

// A partially labeled motif F^ell: a simple graph F together with a word
// ell of distinct vertices of F marking the labeled (rooted) positions.
// The labeled subgraph F^[ell] keeps only the edges of F with both
// endpoints labeled.
class LabeledMotif {
public:
    LabeledMotif(SimpleGraph graph, Word labels);

    const SimpleGraph& graph() const { return graph_; }
    const Word& labels() const { return labels_; }
    int num_labels() const { return labels_.size(); }

    // E(F^[ell]), sorted like SimpleGraph edges.
    std::vector<std::pair<int, int>> labeled_edges() const;

    // E(F) \ E(F^[ell]), the edges at least one endpoint of which is free.
    std::vector<std::pair<int, int>> free_edges() const;

    bool operator==(const LabeledMotif& other) const {
        return graph_ == other.graph_ && labels_ == other.labels_;
    }

private:
    SimpleGraph graph_;
    Word labels_;
};

// Appends isolated vertices v(F)+1, ..., target_p to the motif and labels
// the first extra_labels of them (appended to ell in order). Rooted
// densities are unchanged by this padding.
LabeledMotif pad_isolated(const LabeledMotif& motif, int target_p, int extra_labels);

// A family of d motifs sharing the vertex count, the label word, and the
// labeled subgraph edge set. The common E(F^[ell]) is what lets the family
// act as one quantum observable downstream.
class MotifFamily {
public:
    explicit MotifFamily(std::vector<LabeledMotif> motifs);

    const std::vector<LabeledMotif>& motifs() const { return motifs_; }
    int size() const { return static_cast<int>(motifs_.size()); }
    int vertex_count() const { return motifs_.front().graph().num_vertices(); }
    const Word& labels() const { return motifs_.front().labels(); }

private:
    std::vector<LabeledMotif> motifs_;
};

}  // namespace graphon
