#include <benchmark/benchmark.h>

#include "ewfs/measures.hpp"
#include "ewfs/quantum.hpp"

namespace {

ewfs::Behavior<double> quantum_chained(int m) {
  return ewfs::behavior_from_config(ewfs::chained_optimal_config(m), ewfs::ScenarioSpec::bipartite(m));
}

void BM_FractionFloat(benchmark::State& state) {
  const auto b = quantum_chained(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ewfs::non_absoluteness_fraction(b).value);
}
BENCHMARK(BM_FractionFloat)->DenseRange(2, 10, 2)->Unit(benchmark::kMillisecond);

void BM_CoefficientFloat(benchmark::State& state) {
  const auto b = quantum_chained(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ewfs::non_absoluteness_coefficient(b).value);
}
BENCHMARK(BM_CoefficientFloat)->DenseRange(2, 10, 2)->Unit(benchmark::kMillisecond);

void BM_MeasuresRational(benchmark::State& state) {
  const auto b = ewfs::rationalize_behavior(quantum_chained(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ewfs::non_absoluteness_fraction(b).value);
    benchmark::DoNotOptimize(ewfs::non_absoluteness_coefficient(b).value);
  }
}
BENCHMARK(BM_MeasuresRational)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace
