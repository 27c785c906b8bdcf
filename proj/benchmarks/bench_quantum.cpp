#include <benchmark/benchmark.h>

#include "ewfs/quantum.hpp"

namespace {

void BM_ChainedBehavior(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto config = ewfs::chained_optimal_config(m);
  const auto s = ewfs::ScenarioSpec::bipartite(m);
  for (auto _ : state) benchmark::DoNotOptimize(ewfs::behavior_from_config(config, s));
}
BENCHMARK(BM_ChainedBehavior)->RangeMultiplier(2)->Range(2, 16);

void BM_GhzBehavior(benchmark::State& state) {
  const auto config = ewfs::ghz_mermin_config();
  const auto s = ewfs::ScenarioSpec::make(3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(ewfs::behavior_from_config(config, s));
}
BENCHMARK(BM_GhzBehavior);

}  // namespace
