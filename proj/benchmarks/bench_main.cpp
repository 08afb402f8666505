#include <benchmark/benchmark.h>

#include "graphon/binomial.hpp"
#include "graphon/density.hpp"
#include "graphon/hom_count.hpp"
#include "graphon/sampler.hpp"

namespace {

void bm_sample(benchmark::State& state) {
    const auto w = graphon::Graphon::affine(0.0, 1.0);
    const int n = static_cast<int>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto g = graphon::sample(w, n, seed++);
        benchmark::DoNotOptimize(g.graph.num_edges());
    }
}
BENCHMARK(bm_sample)->Arg(100)->Arg(400)->Arg(1000);

void bm_count_c4(benchmark::State& state) {
    const auto w = graphon::Graphon::affine(0.0, 1.0);
    const auto g = graphon::sample(w, static_cast<int>(state.range(0)), 7);
    const auto c4 = graphon::SimpleGraph::cycle(4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(graphon::count_inj(c4, g.graph));
    }
}
BENCHMARK(bm_count_c4)->Arg(100)->Arg(200)->Arg(400);

void bm_t_graphon_c4(benchmark::State& state) {
    const auto w = graphon::Graphon::affine(0.0, 1.0);
    const auto c4 = graphon::SimpleGraph::cycle(4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(graphon::t_graphon(c4, w));
    }
}
BENCHMARK(bm_t_graphon_c4);

void bm_exact_cdf(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(graphon::exact_cdf(n, 0.5, 0.25, 0.4));
    }
}
BENCHMARK(bm_exact_cdf)->Arg(1024)->Arg(65536)->Arg(1000000);

}  // namespace

BENCHMARK_MAIN();
