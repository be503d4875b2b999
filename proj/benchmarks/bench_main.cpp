#include <benchmark/benchmark.h>

#include "poissonlab/besov.hpp"
#include "poissonlab/counterexample.hpp"
#include "poissonlab/densities.hpp"
#include "poissonlab/experiments.hpp"
#include "poissonlab/losses.hpp"
#include "poissonlab/mc.hpp"

using namespace poissonlab;

static void BM_SimulateOccupancy(benchmark::State& state) {
  const auto balls = state.range(0);
  const auto cells = static_cast<std::uint32_t>(balls - zero_count(balls, 0.6));
  Rng rng(0, 0);
  std::vector<std::uint64_t> mask;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_occupancy(balls, cells, rng, mask));
  state.SetItemsProcessed(state.iterations() * balls);
}
BENCHMARK(BM_SimulateOccupancy)->Arg(1000)->Arg(200000);

static void BM_PoissonExactRisk(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const auto z = zero_count(n, 0.6);
  const auto m = target_m(n, 0.6);
  for (auto _ : state) benchmark::DoNotOptimize(bayes_risk_exact(Model::poisson, n, z, m));
}
BENCHMARK(BM_PoissonExactRisk)->Arg(200000)->Arg(1000000);

static void BM_IidOccupancyDp(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(occupancy_pmf_iid(n, n - zero_count(n, 0.6)));
}
BENCHMARK(BM_IidOccupancyDp)->Arg(1000)->Arg(5000);

static void BM_SamplePoisson(benchmark::State& state) {
  const double mean = static_cast<double>(state.range(0));
  Rng rng(0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_poisson(mean, rng));
}
BENCHMARK(BM_SamplePoisson)->Arg(5)->Arg(1000)->Arg(1000000);

static void BM_AliasDrawPoint(benchmark::State& state) {
  const CellSampler sampler(builtin_density("tent", static_cast<std::size_t>(state.range(0))).function());
  Rng rng(0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.draw_point(rng));
}
BENCHMARK(BM_AliasDrawPoint)->Arg(64)->Arg(4096);

static void BM_LnLossMixedGrid(benchmark::State& state) {
  const auto f = builtin_density("withzero", 4096);
  const GridFunction g = builtin_density("tent", 18).function();
  for (auto _ : state) benchmark::DoNotOptimize(ln_loss(f, g, 524288));
}
BENCHMARK(BM_LnLossMixedGrid);

static void BM_BesovNorm(benchmark::State& state) {
  Rng rng(0, 3);
  const auto f = random_grid_function(rng, static_cast<std::size_t>(state.range(0)));
  const BesovParams params(0.5, 1.5, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(besov_norm(f, params));
}
BENCHMARK(BM_BesovNorm)->Arg(4096)->Arg(1 << 18);
BENCHMARK_MAIN();
