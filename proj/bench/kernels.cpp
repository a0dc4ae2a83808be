// Fast kernels against their serial reference counterparts.

#include <benchmark/benchmark.h>

#include "apl/analytic.hpp"
#include "apl/harness.hpp"
#include "apl/hypercube.hpp"
#include "apl/nk.hpp"
#include "apl/reference.hpp"

namespace {

using namespace apl;

double gap_at_threshold(int N) { return analytic::critical_x(N, 1.0); }

void BM_AccessibilityBfs(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto field = hypercube::sample_field(N, N, gap_at_threshold(N), ++seed);
    benchmark::DoNotOptimize(reference::bfs_accessible(field).accessible);
  }
}
BENCHMARK(BM_AccessibilityBfs)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_AccessibilityMaterialized(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  hypercube::SearchScratch scratch;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto field = hypercube::sample_field(N, N, gap_at_threshold(N), ++seed);
    benchmark::DoNotOptimize(hypercube::is_accessible(field, scratch, false).accessible);
  }
}
BENCHMARK(BM_AccessibilityMaterialized)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_AccessibilityLazy(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  hypercube::SearchScratch scratch;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const hypercube::LazyField field(N, N, gap_at_threshold(N), ++seed);
    benchmark::DoNotOptimize(hypercube::is_accessible(field, scratch, false).accessible);
  }
}
BENCHMARK(BM_AccessibilityLazy)->Arg(12)->Arg(16)->Arg(20)->Arg(24)->Unit(benchmark::kMicrosecond);

void BM_EstimateSerial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(reference::estimate_accessibility(14, 14, gap_at_threshold(14), 256, 1));
}
BENCHMARK(BM_EstimateSerial)->Unit(benchmark::kMillisecond);

void BM_EstimateParallel(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(harness::estimate_accessibility(14, 14, gap_at_threshold(14), 256, 1));
}
BENCHMARK(BM_EstimateParallel)->Unit(benchmark::kMillisecond);

void BM_NkNaiveMax(benchmark::State& state) {
  const nk::NKLandscape land(static_cast<int>(state.range(0)), 4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(reference::naive_exhaustive_max(land).value);
}
BENCHMARK(BM_NkNaiveMax)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_NkGrayMax(benchmark::State& state) {
  const nk::NKLandscape land(static_cast<int>(state.range(0)), 4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(nk::exhaustive_max(land).value);
}
BENCHMARK(BM_NkGrayMax)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_NkGreedy(benchmark::State& state) {
  const nk::NKLandscape land(24, static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(nk::greedy_block_max(land).value);
}
BENCHMARK(BM_NkGreedy)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
