#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "balloons/balloon.hpp"
#include "balloons/matching.hpp"
#include "balloons/pointproc.hpp"

using namespace balloons;

namespace {

PointSet plane_points(std::int64_t n) {
  return sample_uniform_points(Space::euclidean(2), make_cube(2, std::sqrt(double(n))), static_cast<std::size_t>(n), 1);
}

PointSet disk_points(std::int64_t n) {
  const double R = 2 * std::asinh(std::sqrt(double(n) / (4 * std::numbers::pi)));
  return sample_uniform_points(Space::hyperbolic(), DiskWindow{R}, static_cast<std::size_t>(n), 1);
}

PointSet tree_points(std::int64_t n) {
  return sample_uniform_points(Space::real_tree(3), TreeBallWindow{std::log2(double(n) / 3 + 1)},
                               static_cast<std::size_t>(n), 1);
}

void BM_MatchEuclidean(benchmark::State& state) {
  const PointSet ps = plane_points(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_stable_matching(ps));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MatchEuclidean)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Unit(benchmark::kMillisecond);

void BM_MatchEuclideanNoExtras(benchmark::State& state) {
  const PointSet ps = plane_points(state.range(0));
  const MatchOptions opts{MatcherKind::accelerated, false, false};
  for (auto _ : state) benchmark::DoNotOptimize(greedy_stable_matching(ps, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MatchEuclideanNoExtras)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Unit(benchmark::kMillisecond);

void BM_MatchNaive(benchmark::State& state) {
  const PointSet ps = plane_points(state.range(0));
  const MatchOptions opts{MatcherKind::naive};
  for (auto _ : state) benchmark::DoNotOptimize(greedy_stable_matching(ps, opts));
}
BENCHMARK(BM_MatchNaive)->RangeMultiplier(4)->Range(1 << 8, 1 << 12)->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& state) {
  const PointSet ps = plane_points(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_matching(ps));
}
BENCHMARK(BM_BruteForce)->RangeMultiplier(2)->Range(1 << 8, 1 << 11)->Unit(benchmark::kMillisecond);

void BM_MatchHyperbolic(benchmark::State& state) {
  const PointSet ps = disk_points(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_stable_matching(ps));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MatchHyperbolic)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond);

void BM_MatchTree(benchmark::State& state) {
  const PointSet ps = tree_points(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_stable_matching(ps));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MatchTree)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond);

void BM_VerifyStability(benchmark::State& state) {
  const PointSet ps = plane_points(state.range(0));
  const MatchingResult mr = greedy_stable_matching(ps);
  for (auto _ : state) benchmark::DoNotOptimize(verify_stability(ps, mr));
}
BENCHMARK(BM_VerifyStability)->Range(1 << 12, 1 << 16)->Unit(benchmark::kMillisecond);

void BM_Trajectory(benchmark::State& state) {
  const PointSet ps = plane_points(state.range(0));
  const MatchingResult mr = greedy_stable_matching(ps);
  const MetricPoint origin = window_center(ps.space(), ps.window());
  for (auto _ : state) benchmark::DoNotOptimize(compute_trajectory(ps, mr, origin));
}
BENCHMARK(BM_Trajectory)->Range(1 << 12, 1 << 18)->Unit(benchmark::kMillisecond);

}  // namespace
