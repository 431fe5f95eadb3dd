#include <benchmark/benchmark.h>

#include "curvecross/exact.hpp"

using namespace curvecross;

static void BM_MeanExact(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mean_intersections_exact(n, SobolevOrder{1}).approx);
}
BENCHMARK(BM_MeanExact)->Arg(1)->Arg(50)->Arg(200);

static void BM_SeriesLimits(benchmark::State& state) {
  const SobolevOrder r{static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(sobolev_series_limits(r).lambda_sq);
}
BENCHMARK(BM_SeriesLimits)->Arg(2)->Arg(5)->Arg(20);
