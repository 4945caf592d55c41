#include <csf/partitions.hpp>

#include <benchmark/benchmark.h>

namespace {

void BM_EnumerateStructures(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(csf::enumerate_structures(n, k));
  }
}
BENCHMARK(BM_EnumerateStructures)->Args({6, 3})->Args({8, 4})->Args({9, 9});

void BM_CountStructures(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(csf::count_structures(n, n));
  }
}
BENCHMARK(BM_CountStructures)->Arg(8)->Arg(10)->Arg(11);

void BM_EnumerateDiagrams(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(csf::enumerate_diagrams(n, n / 2));
  }
}
BENCHMARK(BM_EnumerateDiagrams)->Arg(20)->Arg(40);

void BM_CheckNesting(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(csf::check_nesting(n));
  }
}
BENCHMARK(BM_CheckNesting)->Arg(6)->Arg(8);

}  // namespace
