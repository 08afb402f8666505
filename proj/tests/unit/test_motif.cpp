#include <doctest.h>

#include "graphon/motif.hpp"

using namespace graphon;

TEST_SUITE_BEGIN("motif");

TEST_CASE("labeled motif splits edges by label coverage") {
    const LabeledMotif m(SimpleGraph::complete(3), Word({1, 2}));
    CHECK(m.num_labels() == 2);
    CHECK(m.labeled_edges() == std::vector<std::pair<int, int>>{{1, 2}});
    CHECK(m.free_edges() == std::vector<std::pair<int, int>>{{1, 3}, {2, 3}});

    const LabeledMotif unlabeled(SimpleGraph::complete(3), Word(std::vector<int>{}));
    CHECK(unlabeled.labeled_edges().empty());
    CHECK(unlabeled.free_edges().size() == 3);

    CHECK_THROWS_AS(LabeledMotif(SimpleGraph::complete(2), Word({3})), DomainError);
}

TEST_CASE("pad_isolated appends isolated vertices and labels in order") {
    const LabeledMotif k2_rooted(SimpleGraph::complete(2), Word({1}));

    const auto padded = pad_isolated(k2_rooted, 3, 0);
    CHECK(padded.graph().num_vertices() == 3);
    CHECK(padded.graph().edges() == std::vector<std::pair<int, int>>{{1, 2}});
    CHECK(padded.labels() == Word({1}));

    CHECK(pad_isolated(k2_rooted, 2, 0) == k2_rooted);

    const auto labeled_pad = pad_isolated(k2_rooted, 5, 2);
    CHECK(labeled_pad.graph().num_vertices() == 5);
    CHECK(labeled_pad.labels() == Word({1, 3, 4}));
    CHECK(labeled_pad.graph().degree(5) == 0);

    CHECK_THROWS_AS(pad_isolated(k2_rooted, 1, 0), SizeError);
    CHECK_THROWS_AS(pad_isolated(k2_rooted, 3, 2), DomainError);
    CHECK_THROWS_AS(pad_isolated(k2_rooted, 3, -1), DomainError);
}

TEST_CASE("motif family shares labels and labeled subgraph") {
    const LabeledMotif triangle(SimpleGraph::complete(3), Word({1, 2}));
    const LabeledMotif path(SimpleGraph::path(3), Word({1, 2}));
    // Both have labeled edge set {{1,2}}.
    CHECK_NOTHROW(MotifFamily({triangle, path}));

    const MotifFamily fam({triangle, path});
    CHECK(fam.size() == 2);
    CHECK(fam.vertex_count() == 3);
    CHECK(fam.labels() == Word({1, 2}));

    // Different vertex count.
    CHECK_THROWS_AS(MotifFamily({triangle, LabeledMotif(SimpleGraph::complete(4), Word({1, 2}))}),
                    DomainError);
    // Different label word.
    CHECK_THROWS_AS(MotifFamily({triangle, LabeledMotif(SimpleGraph::complete(3), Word({1, 3}))}),
                    DomainError);
    // Same labels, different labeled subgraph.
    CHECK_THROWS_AS(MotifFamily({triangle, LabeledMotif(SimpleGraph::empty(3), Word({1, 2}))}),
                    DomainError);
    CHECK_THROWS_AS(MotifFamily({}), DomainError);
}

TEST_SUITE_END();
