#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "balloons/hyptess.hpp"

using namespace balloons;

namespace {

void BM_Build(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_tessellation(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Build)->DenseRange(6, 14, 4)->Unit(benchmark::kMillisecond);

void BM_Project(benchmark::State& state) {
  const Tessellation tess = build_tessellation(14);
  Stream rng(1, "bench.project");
  std::vector<Complex> pts;
  for (int i = 0; i < 4096; ++i) {
    const double s = 2 * std::asinh(std::sinh(2.0) * std::sqrt(rng.uniform()));
    pts.push_back(std::polar(std::tanh(s / 2), 2 * std::numbers::pi * rng.uniform()));
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(try_project(tess, pts[i++ & 4095]));
}
BENCHMARK(BM_Project);

void BM_TruncationRadius(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(truncated_area(0.8 + 1e-9 * double(state.iterations())));
}
BENCHMARK(BM_TruncationRadius);

}  // namespace
