#include "domino/sim.hpp"

#include <benchmark/benchmark.h>

using namespace domino;

static void BM_Step(benchmark::State& state) {
  ModelParams params{static_cast<std::int64_t>(state.range(0)), 0.1,
                     InversePowerMu{0.05}, 1};
  sim::LatticeState lattice(params.lattice_size);
  Rng rng(1);
  for (auto _ : state) {
    auto ev = sim::step(lattice, params, rng);
    benchmark::DoNotOptimize(ev);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Step)->Arg(1000)->Arg(100000);

static void BM_FindClusterWorstCase(benchmark::State& state) {
  // one long run with a single gap: find_cluster walks nearly the whole ring
  const std::int64_t N = state.range(0);
  sim::LatticeState lattice(N);
  for (std::int64_t i = 1; i < N; ++i) lattice.occupy(i);
  for (auto _ : state) {
    auto span = sim::find_cluster(lattice, N / 2);
    benchmark::DoNotOptimize(span);
  }
}
BENCHMARK(BM_FindClusterWorstCase)->Arg(1000)->Arg(100000);

static void BM_RunWithSampling(benchmark::State& state) {
  ModelParams params{1000, 0.1, InversePowerMu{0.05}, 2};
  for (auto _ : state) {
    auto stats = sim::run(params, 200000, 20000, 100);
    benchmark::DoNotOptimize(stats.samples);
  }
  state.SetItemsProcessed(state.iterations() * 200000);
}
BENCHMARK(BM_RunWithSampling);

static void BM_Measure(benchmark::State& state) {
  ModelParams params{1000, 0.1, InversePowerMu{0.05}, 3};
  const auto stats = sim::run(params, 500000, 50000, 100);
  for (auto _ : state) {
    auto emp = sim::measure(stats);
    benchmark::DoNotOptimize(emp.n_hat.data());
  }
}
BENCHMARK(BM_Measure);
