#pragma once

#include "graphon/graph.hpp"
#include "graphon/motif.hpp"
#include "graphon/words.hpp"

namespace graphon {

// Counts can exceed 2^64 already for modest hosts (A_n^4 at n ~ 2000), so
// every counter works in 128 bits and divides once at the end.
using uint128 = unsigned __int128;

double uint128_to_double(uint128 v);

// A_n^p = n(n-1)...(n-p+1). Throws ExplosionGuard on 128-bit overflow.
uint128 falling_factorial(int n, int p);

// Exact counts by backtracking over motif vertices in a connectivity-aware
// order, with candidate sets intersected word-wise against host bit rows.
uint128 count_hom(const SimpleGraph& f, const SimpleGraph& g);
uint128 count_inj(const SimpleGraph& f, const SimpleGraph& g);
uint128 count_ind(const SimpleGraph& f, const SimpleGraph& g);

// Densities: counts normalized by n^p (hom) or A_n^p (inj, ind).
double t_hom(const SimpleGraph& f, const SimpleGraph& g);
double t_inj(const SimpleGraph& f, const SimpleGraph& g);
double t_ind(const SimpleGraph& f, const SimpleGraph& g);

// Rooted injective count of F^ell in G^alpha, factored as
// inj_count = hat_y * tilde_count: hat_y checks the labeled subgraph at
// alpha, tilde_count backtracks only over the free vertices (injectively,
// avoiding alpha) against the edges with at least one free endpoint.
struct RootedCount {
    LabeledMotif motif;
    Word root;
    uint128 inj_count = 0;
    double density = 0.0;  // inj_count / A_{n-k}^{p-k}
    bool hat_y = false;
    uint128 tilde_count = 0;
    double tilde_density = 0.0;
};

RootedCount t_inj_rooted(const LabeledMotif& motif, const SimpleGraph& g, const Word& alpha);

// Fast path for traversals that only need the numbers: returns
// (hat_y, tilde_count) without building the report struct.
std::pair<bool, uint128> rooted_counts(const LabeledMotif& motif, const SimpleGraph& g,
                                       const std::vector<int>& alpha);

// Ground truth by unpruned enumeration of every map V(F) -> V(G).
// Capped at v(F) <= 5, v(G) <= 9.
struct OracleDensities {
    double hom = 0.0;
    double inj = 0.0;
    double ind = 0.0;
};

OracleDensities oracle_densities(const SimpleGraph& f, const SimpleGraph& g);

}  // namespace graphon
