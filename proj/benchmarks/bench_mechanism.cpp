#include <csf/game.hpp>
#include <csf/mechanism.hpp>

#include "bench_common.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_MechanismScan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const auto game = csf::build_game(csf::bench::random_spec(n, k, 7));
  for (auto _ : state) {
    benchmark::DoNotOptimize(csf::scan_mechanism(*game, game->mechanism()));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(game->profile_count()));
}
BENCHMARK(BM_MechanismScan)->Args({3, 2})->Args({3, 3})->Args({4, 2});

void BM_InducedBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const auto game = csf::build_game(csf::bench::random_spec(n, k, 7));
  for (auto _ : state) {
    benchmark::DoNotOptimize(csf::induced_normal_form(game));
  }
}
BENCHMARK(BM_InducedBuild)->Args({3, 3})->Args({4, 2});

}  // namespace
