#include <csf/equilibrium.hpp>
#include <csf/spec_io.hpp>

#include "bench_common.hpp"

#include <benchmark/benchmark.h>

namespace {

csf::InducedGame random_bimatrix_game(int rows, int cols, unsigned seed) {
  using csf::Rational;
  csf::GameSpec spec;
  spec.player_names = {"1", "2"};
  spec.k_max = 1;
  spec.mechanism_name = "identity";
  std::vector<std::string> labels1, labels2;
  for (int i = 0; i < rows; ++i) labels1.push_back("a" + std::to_string(i));
  for (int j = 0; j < cols; ++j) labels2.push_back("b" + std::to_string(j));
  spec.labels[1]["1|2"] = labels1;
  spec.labels[2]["1|2"] = labels2;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> value(-100000, 100000);
  for (const auto& l1 : labels1) {
    for (const auto& l2 : labels2) {
      spec.payoffs.push_back(
          {"1|2", {l1, l2}, {Rational(value(rng), 10000), Rational(value(rng), 10000)}});
    }
  }
  return csf::induced_normal_form(csf::build_game(spec));
}

void BM_SupportEnumeration(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const csf::InducedGame game = random_bimatrix_game(m, m, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(csf::solve_support_enumeration(game));
  }
}
BENCHMARK(BM_SupportEnumeration)->Arg(3)->Arg(4)->Arg(5);

void BM_Replicator(benchmark::State& state) {
  const csf::InducedGame game = random_bimatrix_game(4, 4, 13);
  csf::ReplicatorOptions options;
  options.steps = static_cast<std::size_t>(state.range(0));
  options.eps = csf::Rational(0);  // run the full budget
  const csf::MixedProfile init = csf::uniform_profile(game);
  for (auto _ : state) {
    benchmark::DoNotOptimize(csf::replicator_dynamics(game, init, options));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Replicator)->Arg(1000)->Arg(10000);

void BM_SolvePure3Player(benchmark::State& state) {
  const auto game = csf::induced_normal_form(csf::build_game(csf::bench::random_spec(3, 3, 5)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(csf::solve_pure(game));
  }
}
BENCHMARK(BM_SolvePure3Player);

}  // namespace
