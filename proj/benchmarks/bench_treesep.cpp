#include <benchmark/benchmark.h>

#include "balloons/treesep.hpp"

using namespace balloons;

namespace {

void BM_Generate(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(generate_configuration_model(static_cast<std::uint32_t>(state.range(0)), 3, seed++));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Generate)->Range(1 << 10, 1 << 17);

void BM_Greedy(benchmark::State& state) {
  const Graph g = to_graph(generate_configuration_model(100'000, 3, 1));
  const int t = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_max_separated(g, t, 2));
}
BENCHMARK(BM_Greedy)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_LocalFactor(benchmark::State& state) {
  const Graph g = to_graph(generate_configuration_model(100'000, 3, 1));
  const int t = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(local_factor_separated(g, t, 2));
}
BENCHMARK(BM_LocalFactor)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_Exact(benchmark::State& state) {
  const Graph g = to_graph(generate_configuration_model(static_cast<std::uint32_t>(state.range(0)), 3, 1));
  for (auto _ : state) benchmark::DoNotOptimize(exact_max_separated(g, 1));
}
BENCHMARK(BM_Exact)->DenseRange(20, 50, 10)->Unit(benchmark::kMillisecond);

void BM_EventProbability(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_event_probability(n, 3, n / 8, 2));
}
BENCHMARK(BM_EventProbability)->Range(64, 4096);

}  // namespace
