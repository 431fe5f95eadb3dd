#include <benchmark/benchmark.h>

#include "curvecross/sampling.hpp"

using namespace curvecross;

static void BM_SamplePair(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_pair(n, SobolevOrder{0}, SeedSpec{3, i++}).f.degree());
}
BENCHMARK(BM_SamplePair)->Arg(1)->Arg(8)->Arg(64);

static void BM_FiberAttempt(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(fiber_attempt(n, SeedSpec{4, i++}).has_value());
}
BENCHMARK(BM_FiberAttempt)->Arg(1)->Arg(3);
