#include "domino/exact.hpp"

#include <benchmark/benchmark.h>

using namespace domino;

static void BM_SolveInversePower(benchmark::State& state) {
  const auto i_max = state.range(0);
  const InversePowerCase c{0.5, 1000};
  for (auto _ : state) {
    auto dist = exact::solve_inverse_power(c, i_max);
    benchmark::DoNotOptimize(dist.n.data());
  }
  state.SetComplexityN(i_max);
}
BENCHMARK(BM_SolveInversePower)->Arg(100)->Arg(1000)->Arg(10000)->Complexity();

static void BM_AdaptiveTruncation(benchmark::State& state) {
  const InversePowerCase c{0.5, 1000};
  for (auto _ : state) benchmark::DoNotOptimize(exact::adaptive_i_max(c));
}
BENCHMARK(BM_AdaptiveTruncation);

static void BM_TransformRoundTrip(benchmark::State& state) {
  const InversePowerCase c{1.0, 1000};
  const auto dist = exact::solve_inverse_power(c, 200);
  const auto tc = exact::transform_constants(c);
  for (auto _ : state) {
    auto back = exact::c_to_n(exact::n_to_c(dist, tc), tc, c);
    benchmark::DoNotOptimize(back.n.data());
  }
}
BENCHMARK(BM_TransformRoundTrip);

static void BM_SolveGeneral(benchmark::State& state) {
  ModelParams params{1000, 0.5, ConstantMu{0.5}, 0};
  for (auto _ : state) {
    auto res = exact::solve_general(params, 60, 1e-10, 500);
    benchmark::DoNotOptimize(res.dist.n.data());
  }
}
BENCHMARK(BM_SolveGeneral);
