#include <benchmark/benchmark.h>

#include "ewfs/lf_constraints.hpp"

namespace {

using ewfs::Rational;

void BM_CatalogBoundRational(benchmark::State& state) {
  const auto e = ewfs::lf_catalog_m3()[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) {
    benchmark::DoNotOptimize(ewfs::max_over_rlf<Rational>(e, e.scenario(), Rational(1, 8)));
  }
  state.SetLabel(e.label());
}
BENCHMARK(BM_CatalogBoundRational)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_ChainedBoundRational(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto ineq = ewfs::chained(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ewfs::max_over_rlf<Rational>(ineq, ineq.scenario(), Rational(1, 4)));
  }
}
BENCHMARK(BM_ChainedBoundRational)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_ChainedBoundFloat(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto ineq = ewfs::chained(m);
  for (auto _ : state) benchmark::DoNotOptimize(ewfs::max_over_rlf<double>(ineq, ineq.scenario(), 0.25));
}
BENCHMARK(BM_ChainedBoundFloat)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_MerminBoundRational(benchmark::State& state) {
  const auto mm = ewfs::mermin();
  for (auto _ : state) benchmark::DoNotOptimize(ewfs::max_over_rlf<Rational>(mm, mm.scenario(), Rational(1, 8)));
}
BENCHMARK(BM_MerminBoundRational)->Unit(benchmark::kMillisecond);

}  // namespace
