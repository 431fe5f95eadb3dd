#include <benchmark/benchmark.h>

#include "curvecross/intersection.hpp"
#include "curvecross/sampling.hpp"

using namespace curvecross;

static void BM_CountIntersections(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    state.PauseTiming();
    const CurvePair p = sample_pair(n, SobolevOrder{0}, SeedSpec{1, i++});
    state.ResumeTiming();
    benchmark::DoNotOptimize(count_intersections(p.f, p.g).count);
  }
}
BENCHMARK(BM_CountIntersections)->Arg(1)->Arg(2)->Arg(3)->Arg(8)->Arg(16);

static void BM_BruteForceCount(benchmark::State& state) {
  const CurvePair p = sample_pair(2, SobolevOrder{0}, SeedSpec{2, 0});
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_count(p.f, p.g, 1024).count);
}
BENCHMARK(BM_BruteForceCount)->Unit(benchmark::kMillisecond);
