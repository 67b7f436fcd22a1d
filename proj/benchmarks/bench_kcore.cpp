#include <benchmark/benchmark.h>

#include <random>

#include "pagrowth/kcore.hpp"

namespace {

pagrowth::Snapshot random_snapshot(std::size_t n, double mean_degree) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<pagrowth::NodeId> node(0, static_cast<pagrowth::NodeId>(n - 1));
  std::vector<std::pair<pagrowth::NodeId, pagrowth::NodeId>> edges;
  const auto m = static_cast<std::size_t>(mean_degree * n / 2);
  for (std::size_t i = 0; i < m; ++i) edges.emplace_back(node(rng), node(rng));
  return pagrowth::Snapshot::from_static(n, edges);
}

void BM_CoreDecomposition(benchmark::State& state) {
  const auto g = random_snapshot(static_cast<std::size_t>(state.range(0)), 8.0);
  for (auto _ : state) benchmark::DoNotOptimize(pagrowth::core_decomposition(g));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.num_edges()));
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_CoreDecomposition)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();
