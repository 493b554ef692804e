#include "domino/series.hpp"

#include <benchmark/benchmark.h>

using namespace domino;

static void BM_RecurrenceFloat(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const double c0 = series::c_initial(1.0);
  for (auto _ : state) {
    auto seq = series::run_recurrence(c0, c0, m);
    benchmark::DoNotOptimize(seq.values.data());
  }
}
BENCHMARK(BM_RecurrenceFloat)->Arg(64)->Arg(256)->Arg(1024);

static void BM_RecurrenceExact(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto seq = series::run_recurrence_exact(BigRat(1), BigRat(1), m);
    benchmark::DoNotOptimize(&seq.exact.back());
  }
}
BENCHMARK(BM_RecurrenceExact)->Arg(60)->Arg(200);

static void BM_MotzkinIntegers(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto v = series::motzkin_numbers(m);
    benchmark::DoNotOptimize(&v.back());
  }
}
BENCHMARK(BM_MotzkinIntegers)->Arg(200)->Arg(450);

static void BM_GfCoeffs(benchmark::State& state) {
  const auto order = static_cast<std::size_t>(state.range(0));
  const double c0 = series::c_initial(0.5);
  for (auto _ : state) {
    auto seq = series::gf_coeffs(c0, c0, order);
    benchmark::DoNotOptimize(seq.values.data());
  }
}
BENCHMARK(BM_GfCoeffs)->Arg(64)->Arg(256);

static void BM_ClosedForm(benchmark::State& state) {
  const double c0 = series::c_initial(1.0);
  for (auto _ : state) {
    double acc = 0.0;
    for (std::size_t m = 1; m <= 40; ++m) acc += series::closed_form_c(m, c0);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_ClosedForm);
