// Serial reference vs OpenMP kernels: Monte Carlo pulse blocks and the
// (mu_s, L) key-rate sweep.
#include <benchmark/benchmark.h>

#include <vector>

#include "brpqkd/monte_carlo.h"
#include "brpqkd/optimizer.h"

namespace {

brpqkd::McConfig gys_config(std::uint64_t n_pulses) {
  brpqkd::McConfig c;
  c.n_pulses = n_pulses;
  c.source = {0.5, 2.0e5};
  c.channel = {100.0, 0.21};
  c.det = {0.045, 1.7e-6, 0.033, 0.5};
  c.seed = 7;
  return c;
}

brpqkd::SweepGrid rate_grid() {
  brpqkd::SweepGrid g;
  for (int i = 1; i <= 10; ++i) g.mu_s_values.push_back(0.1 * i);
  for (int L = 0; L <= 200; ++L) g.length_values_km.push_back(L);
  g.det = {0.045, 1.7e-6, 0.033, 0.5};
  return g;
}

void BM_SimulateReference(benchmark::State& state) {
  const auto cfg = gys_config(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brpqkd::simulate_reference(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateReference)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_SimulateOpenMP(benchmark::State& state) {
  const auto cfg = gys_config(1 << 20);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brpqkd::simulate(cfg, threads));
  state.SetItemsProcessed(state.iterations() * (1 << 20));
}
BENCHMARK(BM_SimulateOpenMP)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_SweepReference(benchmark::State& state) {
  const auto grid = rate_grid();
  for (auto _ : state) benchmark::DoNotOptimize(brpqkd::sweep_reference(grid));
}
BENCHMARK(BM_SweepReference)->Unit(benchmark::kMicrosecond);

void BM_SweepOpenMP(benchmark::State& state) {
  const auto grid = rate_grid();
  for (auto _ : state) benchmark::DoNotOptimize(brpqkd::sweep(grid));
}
BENCHMARK(BM_SweepOpenMP)->Unit(benchmark::kMicrosecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
