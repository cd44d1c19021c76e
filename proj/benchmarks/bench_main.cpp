#include <benchmark/benchmark.h>

#include <numbers>

#include "reimann/seminorms.hpp"
#include "reimann/singular_integrals.hpp"
#include "reimann/zoo.hpp"

using namespace reimann;

static void BM_QbarQuotient(benchmark::State& state) {
  const auto v = *find_zoo_entry("bump").field;
  const Vec x = vec2(0.1, 0.2), h = vec2(0.01, 0.02), k = vec2(-0.02, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(qbar_quotient(v, x, h, k));
}
BENCHMARK(BM_QbarQuotient);

static void BM_EstimateR(benchmark::State& state) {
  const auto v = *find_zoo_entry("zsq").field;
  const auto cfg = ProbeConfig::make(2, 4, static_cast<int>(state.range(0)), 3, 0.5, 1);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_seminorm(v, SeminormKind::r, cfg).value);
}
BENCHMARK(BM_EstimateR)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_BiotSavart128(benchmark::State& state) {
  const auto omega = disk_vorticity(128);
  for (auto _ : state) benchmark::DoNotOptimize(biot_savart(omega).size());
}
BENCHMARK(BM_BiotSavart128)->Unit(benchmark::kMillisecond);

static void BM_Hodge128(benchmark::State& state) {
  GridField b = centered_grid(2, 128, std::numbers::pi, BoundaryMode::periodic);
  auto& x = b.add("x");
  auto& y = b.add("y");
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Vec p = b.point(i);
    x[i] = std::cos(p[0] + 2 * p[1]);
    y[i] = std::sin(3 * p[0]);
  }
  for (auto _ : state) benchmark::DoNotOptimize(hodge_check(b).relative_l2);
}
BENCHMARK(BM_Hodge128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
