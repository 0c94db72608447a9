#include <benchmark/benchmark.h>

#include "gcoarse/coarsen.hpp"
#include "gcoarse/embed.hpp"
#include "gcoarse/graph_ops.hpp"
#include "gcoarse/synthetic.hpp"

namespace {

using namespace gcoarse;

void BM_NetmfFull(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = synthetic::random_sparse_graph(n, 5 * n, 3);
  EmbedOptions opt;
  opt.dim = 32;
  for (auto _ : state) {
    benchmark::DoNotOptimize(embed_graph(g, opt));
  }
}
BENCHMARK(BM_NetmfFull)->RangeMultiplier(2)->Range(200, 800)->Unit(benchmark::kMillisecond);

// Coarsen to a quarter of the vertices, then embed the smaller graph.
void BM_CoarsenThenNetmfsc(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = synthetic::random_sparse_graph(n, 5 * n, 3);
  SplitMix64 rng(4);
  const TerminalSet t = synthetic::random_terminals(g, 0.25, rng);
  EmbedOptions opt;
  opt.mode = EmbedMode::netmfsc;
  opt.dim = 32;
  opt.original_degrees = weighted_degrees(g);
  for (auto _ : state) {
    const Graph h =
        random_contraction(apply_theta(g, 0.5), t, DegreeThreshold::infinity(), 9).graph;
    benchmark::DoNotOptimize(embed_graph(h, opt));
  }
}
BENCHMARK(BM_CoarsenThenNetmfsc)->RangeMultiplier(2)->Range(200, 800)->Unit(benchmark::kMillisecond);

void BM_TruncatedSvd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  SplitMix64 rng(5);
  const DenseMatrix m = synthetic::random_sddm(n, 0.1, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(truncated_svd(m, 32));
  }
}
BENCHMARK(BM_TruncatedSvd)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);

}  // namespace
