// Micro-benchmarks for the hot paths: pmf convolution, the brute-force
// oracle, ratio profiles, bound reports, the ray envelope and a small sweep.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "pbcli/sweep.hpp"
#include "pbratio/pbratio.hpp"

namespace {

pbratio::ParameterVector random_vector(std::size_t n, double p_max = 0.9) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(0.0, p_max);
  std::vector<double> p(n);
  for (auto& v : p) v = u(rng);
  return pbratio::ParameterVector::make(p);
}

void BM_Pmf(benchmark::State& state) {
  const auto pv = random_vector(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pbratio::pmf(pv));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Pmf)->RangeMultiplier(4)->Range(4, 1024)->Complexity(benchmark::oNSquared);

void BM_BrutePmf(benchmark::State& state) {
  const auto pv = random_vector(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pbratio::oracle::brute_pmf(pv));
}
BENCHMARK(BM_BrutePmf)->DenseRange(4, 16, 4);

void BM_RatioProfile(benchmark::State& state) {
  const auto pv = random_vector(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pbratio::ratio_profile(pv));
}
BENCHMARK(BM_RatioProfile)->RangeMultiplier(4)->Range(4, 256);

void BM_BoundReport(benchmark::State& state) {
  const auto pv = random_vector(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pbratio::bound_report(pv));
}
BENCHMARK(BM_BoundReport)->RangeMultiplier(4)->Range(4, 256);

void BM_Envelope(benchmark::State& state) {
  const auto pv = random_vector(static_cast<std::size_t>(state.range(0)), 0.3);
  const auto grid = pbratio::default_ray_grid();
  for (auto _ : state) benchmark::DoNotOptimize(pbratio::envelope(pv, grid));
}
BENCHMARK(BM_Envelope)->Arg(10)->Arg(40);

void BM_Sweep(benchmark::State& state) {
  pbcli::SweepConfig cfg;
  cfg.seed = 1;
  cfg.trials = 1000;
  cfg.n_min = 1;
  cfg.n_max = 20;
  cfg.p_max = 0.9;
  cfg.checks = pbcli::parse_checks("theorem1,prop1,prop2,tv_chain");
  cfg.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(pbcli::run_sweep(cfg));
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
