#pragma once

#include <cstdint>
#include <vector>

#include "graphon/graph.hpp"
#include "graphon/graphon.hpp"

namespace graphon {

// A W-random graph together with the latent coordinates that generated it.
// Immutable; the adjacency lives in the embedded SimpleGraph's bit rows.
struct SampledGraph {
    int n = 0;
    SimpleGraph graph;
    std::vector<double> latent;  // X_1..X_n in [0,1]
    std::uint64_t seed = 0;
};

// G_n(W): latents X_i i.i.d. uniform, every pair {i,j} an edge independently
// with probability W(X_i, X_j). Deterministic in (W, n, seed): the latent of
// vertex i comes from the counter (i, .) of a latent substream, the edge
// coin of {i,j} from the counter (i, j) of an edge substream, so results do
// not depend on evaluation order.
SampledGraph sample(const Graphon& w, int n, std::uint64_t seed);

// Same edge mechanism with caller-supplied latents (conditional sampling
// given X = latent). Latent values must lie in [0,1].
SampledGraph sample_with_latents(const Graphon& w, std::vector<double> latent,
                                 std::uint64_t seed);

// D_i(G) = deg(i) / (n-1) for each vertex, in [0,1]. Needs n >= 2.
std::vector<double> degree_sequence(const SampledGraph& g);

}  // namespace graphon
