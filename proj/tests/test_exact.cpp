#include "domino/exact.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace domino;
using namespace domino::exact;

TEST_CASE("inverse-power recurrence anchors at theta=1, N=12") {
  const auto dist = solve_inverse_power({1.0, 12}, 2);
  CHECK(dist.n_of(1) == doctest::Approx(14.0 / 15.0).epsilon(1e-15));
  CHECK(dist.n_of(2) == doctest::Approx(28.0 / 75.0).epsilon(1e-15));
  CHECK(dist.i_max() == 2);
  CHECK(dist.theta == doctest::Approx(1.0));
}

TEST_CASE("solver input validation") {
  CHECK_THROWS_AS(solve_inverse_power({0.0, 100}, 10), std::domain_error);
  CHECK_THROWS_AS(solve_inverse_power({-2.0, 100}, 10), std::domain_error);
  CHECK_THROWS_AS(solve_inverse_power({1.0, 100}, 0), std::domain_error);
}

TEST_CASE("sequence sums approach the closed-form totals") {
  const InversePowerCase c{0.5, 1000};
  const auto d = derived_quantities(c);

  // 50 terms leave about 0.6% of the cluster count in the tail
  const auto short_dist = solve_inverse_power(c, 50);
  const double s50 = std::accumulate(short_dist.n.begin(), short_dist.n.end(), 0.0);
  CHECK(s50 < d.n_total);
  const double deficit50 = (d.n_total - s50) / d.n_total;
  CHECK(deficit50 > 0.004);
  CHECK(deficit50 < 0.008);

  const auto long_dist = solve_inverse_power(c, 400);
  const double s400 = std::accumulate(long_dist.n.begin(), long_dist.n.end(), 0.0);
  CHECK((d.n_total - s400) / d.n_total < 1e-8);

  // monotone improvement of both Eq.-style sums with the truncation order
  double prev_gap_n = 1e9, prev_gap_rho = 1e9;
  for (const std::int64_t im : {25, 50, 100, 200, 400}) {
    const auto dist = solve_inverse_power(c, im);
    double sn = 0.0, swn = 0.0;
    for (std::size_t k = 0; k < dist.n.size(); ++k) {
      sn += dist.n[k];
      swn += static_cast<double>(k + 1) * dist.n[k];
    }
    const double gap_n = d.n_total - sn;
    const double gap_rho = d.rho - swn / 1000.0;
    CHECK(gap_n > 0.0);
    CHECK(gap_n < prev_gap_n);
    CHECK(gap_rho > 0.0);
    CHECK(gap_rho < prev_gap_rho);
    prev_gap_n = gap_n;
    prev_gap_rho = gap_rho;
  }
}

TEST_CASE("adaptive truncation hits the weighted tail target") {
  const InversePowerCase c{0.5, 1000};
  const std::int64_t im = adaptive_i_max(c);
  const auto d = derived_quantities(c);
  const auto dist = solve_inverse_power(c, im);
  double swn = 0.0;
  for (std::size_t k = 0; k < dist.n.size(); ++k)
    swn += static_cast<double>(k + 1) * dist.n[k];
  const double tail = d.rho * 1000.0 - swn;
  CHECK(tail >= 0.0);
  CHECK(tail < 2e-9 * d.rho * 1000.0);

  // slower decay -> longer truncation
  CHECK(adaptive_i_max({0.1, 1000}) > adaptive_i_max({1.0, 1000}));
  CHECK(adaptive_i_max({1.0, 1000}) > adaptive_i_max({10.0, 1000}));
}

TEST_CASE("transform constants") {
  const auto tc = transform_constants({1.0, 12});
  CHECK(tc.alpha == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(tc.beta == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  CHECK(transform_alpha(0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(transform_alpha(1e-9) == doctest::Approx(1.0 / 3.0).epsilon(1e-7));
  CHECK_THROWS_AS(transform_constants({0.0, 12}), std::domain_error);

  // bounded on [0, 1e3]; strictly decreasing for theta >= 1; and the early
  // rise past alpha(0) = 1/3 (maximum near theta = 0.72) is real
  double prev = transform_alpha(1.0);
  for (int k = 1; k <= 300; ++k) {
    const double theta = 1.0 + k * (999.0 / 300.0);
    const double a = transform_alpha(theta);
    CHECK(a > 0.0);
    CHECK(a < 1.0);
    CHECK(a < prev);
    prev = a;
  }
  CHECK(transform_alpha(0.7247) > transform_alpha(0.0));
}

TEST_CASE("n_to_c reproduces the initial datum and inverts exactly") {
  const InversePowerCase c{1.0, 12};
  const auto dist = solve_inverse_power(c, 30);
  const auto tc = transform_constants(c);
  const auto seq = n_to_c(dist, tc);
  REQUIRE(seq.size() == dist.n.size());
  CHECK(seq.values[0] == doctest::Approx(series::c_initial(1.0)).epsilon(1e-12));
  CHECK(seq.values[1] == doctest::Approx(series::c_initial(1.0)).epsilon(1e-12));

  const auto back = c_to_n(seq, tc, c);
  for (std::size_t k = 0; k < dist.n.size(); ++k)
    CHECK(back.n[k] == doctest::Approx(dist.n[k]).epsilon(1e-12));
}

TEST_CASE("n_to_c flags alpha-power underflow instead of emitting zeros") {
  const InversePowerCase c{10.0, 1000};
  const auto dist = solve_inverse_power(c, 400);
  const auto tc = transform_constants(c);
  CHECK_THROWS_AS(n_to_c(dist, tc), std::range_error);
}

TEST_CASE("transformed solver output satisfies the quadratic recurrence") {
  // the central algebraic identity of the whole pipeline
  for (const double theta : {0.1, 1.0, 10.0}) {
    const InversePowerCase c{theta, 1000};
    const auto seq = n_to_c(solve_inverse_power(c, 60), transform_constants(c));
    const auto& v = seq.values;
    for (std::size_t m = 0; m + 2 < v.size(); ++m) {
      double conv = 0.0;
      for (std::size_t k = 0; k <= m; ++k) conv += v[k] * v[m - k];
      const double resid = v[m + 2] - v[m + 1] - conv;
      CHECK(std::abs(resid) < 1e-10 * std::abs(v[m + 2]));
    }
  }
}

TEST_CASE("general solver reproduces the inverse-power family") {
  ModelParams params{1000, 0.1, InversePowerMu{0.1}, 0};  // theta = 1
  const auto res = solve_general(params, 40, 1e-10, 500);
  const auto oracle = solve_inverse_power({1.0, 1000}, 40);
  for (std::size_t k = 0; k < 40; ++k)
    CHECK(res.dist.n[k] == doctest::Approx(oracle.n[k]).epsilon(1e-8));
  CHECK(res.dist.derived.rho == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("general solver returns immediately from a solved starting point") {
  ModelParams params{1000, 0.1, InversePowerMu{0.1}, 0};
  const auto res = solve_general(params, 40, 1e-12, 500);
  CHECK(res.iterations == 1);
  CHECK(res.last_delta < 1e-12);
}

TEST_CASE("general solver handles the constant-mu rule") {
  ModelParams params{1000, 0.5, ConstantMu{0.5}, 0};
  const auto res = solve_general(params, 60, 1e-10, 500);
  CHECK(res.iterations > 1);
  for (double v : res.dist.n) CHECK(v >= 0.0);
  // balance laws hold at the fixed point
  double w1 = 0.0, w2 = 0.0;
  const auto& n = res.dist.n;
  for (std::size_t k = 0; k < n.size(); ++k) {
    const double i = static_cast<double>(k + 1);
    w1 += (0.5 / 0.5) * i * n[k];
    w2 += 0.5 * i * i * n[k];
  }
  const double N = 1000.0;
  const double lhs1 = (1.0 - res.dist.derived.rho) * N - 2.0 * res.dist.derived.n_total;
  const double lhs2 = 0.5 * (1.0 - res.dist.derived.rho);
  CHECK(std::abs((lhs1 - w1) / lhs1) < 1e-8);
  CHECK(std::abs((lhs2 - w2 / N) / lhs2) < 1e-8);
}

TEST_CASE("general solver reports non-convergence with the last residual") {
  ModelParams params{1000, 0.5, ConstantMu{0.5}, 0};
  try {
    solve_general(params, 60, 1e-10, 2);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.last_delta > 0.0);
  }
}

TEST_CASE("stationary evaluation rejects negative intermediates") {
  ModelParams params{100, 0.5, ConstantMu{0.5}, 0};
  StationaryAggregates bad{10.0, 1.2, 0.0};  // rho > 1 forces n_1 < 0
  CHECK_THROWS_AS(eval_stationary_sequence(params, bad, 10), std::runtime_error);
}

