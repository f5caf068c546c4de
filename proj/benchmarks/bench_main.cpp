#include <benchmark/benchmark.h>

#include <vector>

#include "jrank/core.hpp"
#include "jrank/jr.hpp"
#include "jrank/mallows.hpp"
#include "jrank/scoring.hpp"
#include "jrank/solve.hpp"

namespace {

using namespace jrank;

// Random profile where each user approves each item with probability density.
Instance random_instance(std::size_t n, std::size_t m, std::size_t k, double density, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<ItemId>> approvals(n);
  for (auto& a : approvals) {
    for (ItemId i = 0; i < m; ++i) {
      if (rng.uniform() < density) a.push_back(i);
    }
  }
  return build_instance(n, m, k, approvals);
}

void BM_VerifyJr(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = random_instance(n, 100, 10, 0.1, 1);
  const auto chosen = greedy_cc(inst, engagement_rule()).committee.items;
  for (auto _ : state) benchmark::DoNotOptimize(verify_jr(chosen, inst));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_VerifyJr)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_GreedyCc(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto inst = random_instance(300, m, 8, 0.1, 2);
  const auto scores = engagement_rule().evaluate_all(inst);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_cc(inst, scores));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GreedyCc)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_ExactJrSet(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto inst = random_instance(40, m, 5, 0.2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(optimal_jr_set_exact(inst, engagement_rule()));
}
BENCHMARK(BM_ExactJrSet)->DenseRange(10, 20, 5)->Unit(benchmark::kMillisecond);

void BM_MallowsSample(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const MallowsConfig config{0.7, identity_ranking(m)};
  Rng rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(sample_mallows_bottom_up(config, rng));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MallowsSample)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

}  // namespace
BENCHMARK_MAIN();
