#include <benchmark/benchmark.h>

#include "gcoarse/coarsen.hpp"
#include "gcoarse/synthetic.hpp"

namespace {

using namespace gcoarse;

struct Input {
  Graph graph;
  TerminalSet terminals;
};

Input sparse_input(std::size_t m) {
  Input in{synthetic::random_sparse_graph(m / 5, m, 77), {}};
  SplitMix64 rng(78);
  in.terminals = synthetic::random_terminals(in.graph, 0.1, rng);
  return in;
}

void BM_RandomContraction(benchmark::State& state) {
  const Input in = sparse_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        random_contraction(in.graph, in.terminals, DegreeThreshold::infinity(), 5));
  }
  state.counters["m"] = static_cast<double>(in.graph.num_edges());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RandomContraction)
    ->RangeMultiplier(2)
    ->Range(25000, 400000)
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oNLogN);

void BM_SchurDelta30(benchmark::State& state) {
  const Input in = sparse_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(schur_complement(in.graph, in.terminals, DegreeThreshold(30)));
  }
}
BENCHMARK(BM_SchurDelta30)->RangeMultiplier(4)->Range(25000, 400000)->Unit(benchmark::kMillisecond);

void BM_ContractionDelta30(benchmark::State& state) {
  const Input in = sparse_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(random_contraction(in.graph, in.terminals, DegreeThreshold(30), 5));
  }
}
BENCHMARK(BM_ContractionDelta30)
    ->RangeMultiplier(4)
    ->Range(25000, 400000)
    ->Unit(benchmark::kMillisecond);

}  // namespace
