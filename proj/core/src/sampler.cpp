#include "graphon/sampler.hpp"

#include "graphon/rng.hpp"

namespace graphon {

namespace {

SampledGraph assemble(const Graphon& w, std::vector<double> latent, std::uint64_t seed) {
    const int n = static_cast<int>(latent.size());
    const std::uint64_t edge_seed = rng::derive(seed, rng::kTagEdge);
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i) {
        const double xi = latent[static_cast<std::size_t>(i - 1)];
        for (int j = i + 1; j <= n; ++j) {
            const double u = rng::unit_at(edge_seed, static_cast<std::uint64_t>(i),
                                          static_cast<std::uint64_t>(j));
            if (u < w(xi, latent[static_cast<std::size_t>(j - 1)])) edges.emplace_back(i, j);
        }
    }
    SampledGraph g;
    g.n = n;
    g.graph = SimpleGraph(n, std::move(edges));
    g.latent = std::move(latent);
    g.seed = seed;
    return g;
}

}  // namespace

SampledGraph sample(const Graphon& w, int n, std::uint64_t seed) {
    if (n < 1) throw DomainError("sample: n must be positive");
    const std::uint64_t latent_seed = rng::derive(seed, rng::kTagLatent);
    std::vector<double> latent(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        latent[static_cast<std::size_t>(i - 1)] =
            rng::unit_at(latent_seed, static_cast<std::uint64_t>(i));
    return assemble(w, std::move(latent), seed);
}

SampledGraph sample_with_latents(const Graphon& w, std::vector<double> latent,
                                 std::uint64_t seed) {
    if (latent.empty()) throw DomainError("sample_with_latents: empty latent vector");
    for (double x : latent)
        if (x < 0.0 || x > 1.0)
            throw DomainError("sample_with_latents: latent outside [0,1]");
    return assemble(w, std::move(latent), seed);
}

std::vector<double> degree_sequence(const SampledGraph& g) {
    if (g.n < 2) throw DomainError("degree_sequence: needs at least 2 vertices");
    std::vector<double> d(static_cast<std::size_t>(g.n));
    for (int i = 1; i <= g.n; ++i)
        d[static_cast<std::size_t>(i - 1)] =
            static_cast<double>(g.graph.degree(i)) / (g.n - 1);
    return d;
}

}  // namespace graphon
