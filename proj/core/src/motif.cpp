#include "graphon/motif.hpp"

#include <algorithm>

namespace graphon {

LabeledMotif::LabeledMotif(SimpleGraph graph, Word labels)
    : graph_(std::move(graph)), labels_(std::move(labels)) {
    if (labels_.max_char() > graph_.num_vertices())
        throw DomainError("LabeledMotif: label exceeds vertex count");
}

std::vector<std::pair<int, int>> LabeledMotif::labeled_edges() const {
    std::vector<std::pair<int, int>> out;
    for (auto [i, j] : graph_.edges())
        if (labels_.contains(i) && labels_.contains(j)) out.emplace_back(i, j);
    return out;
}

std::vector<std::pair<int, int>> LabeledMotif::free_edges() const {
    std::vector<std::pair<int, int>> out;
    for (auto [i, j] : graph_.edges())
        if (!labels_.contains(i) || !labels_.contains(j)) out.emplace_back(i, j);
    return out;
}

LabeledMotif pad_isolated(const LabeledMotif& motif, int target_p, int extra_labels) {
    const int p = motif.graph().num_vertices();
    if (target_p < p) throw SizeError("pad_isolated: target below current vertex count");
    if (extra_labels < 0 || extra_labels > target_p - p)
        throw DomainError("pad_isolated: extra label count out of range");
    if (target_p == p && extra_labels == 0) return motif;

    SimpleGraph padded(target_p, motif.graph().edges());
    std::vector<int> labels = motif.labels().chars();
    for (int c = p + 1; c <= p + extra_labels; ++c) labels.push_back(c);
    return LabeledMotif(std::move(padded), Word(std::move(labels)));
}

MotifFamily::MotifFamily(std::vector<LabeledMotif> motifs) : motifs_(std::move(motifs)) {
    if (motifs_.empty()) throw DomainError("MotifFamily: empty family");
    const int p = motifs_.front().graph().num_vertices();
    const Word& ell = motifs_.front().labels();
    const auto shared = motifs_.front().labeled_edges();
    for (const auto& m : motifs_) {
        if (m.graph().num_vertices() != p)
            throw DomainError("MotifFamily: motifs must share the vertex count");
        if (!(m.labels() == ell))
            throw DomainError("MotifFamily: motifs must share the label word");
        if (m.labeled_edges() != shared)
            throw DomainError("MotifFamily: motifs must share the labeled subgraph");
    }
}

}  // namespace graphon
