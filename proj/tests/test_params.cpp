#include "domino/params.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace domino;

TEST_CASE("derived quantities at theta=1, N=12") {
  const auto d = derived_quantities({1.0, 12});
  CHECK(d.rho == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d.n_total == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(d.n1_empty == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("derived quantities at theta=0.5, N=1000") {
  const auto d = derived_quantities({0.5, 1000});
  CHECK(d.rho == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(d.n_total == doctest::Approx(1000.0 * 0.5 / (1.5 * 2.5)).epsilon(1e-15));
  CHECK(d.n1_empty == doctest::Approx(2.0 * d.n_total / 4.0).epsilon(1e-15));
}

TEST_CASE("derived quantities in the large-theta limit") {
  const auto d = derived_quantities({1e6, 1000000});
  CHECK(d.rho == doctest::Approx(1e-6).epsilon(1e-5));
  CHECK(d.rho > 0.0);
  CHECK(d.n_total > 0.999);
  CHECK(d.n_total < 1.0);
}

TEST_CASE("derived quantities rejects bad inputs") {
  CHECK_THROWS_AS(derived_quantities({0.0, 100}), std::domain_error);
  CHECK_THROWS_AS(derived_quantities({-1.0, 100}), std::domain_error);
  CHECK_THROWS_AS(derived_quantities({1.0, 2}), std::domain_error);
}

TEST_CASE("mu_of follows the rule and clamps") {
  ModelParams ip{100, 0.5, InversePowerMu{0.5}, 0};
  CHECK(mu_of(ip, 5) == doctest::Approx(0.1).epsilon(1e-15));
  ModelParams clamped{100, 0.5, InversePowerMu{2.0}, 0};
  CHECK(mu_of(clamped, 1) == 1.0);
  CHECK(mu_unclamped(clamped, 1) == 2.0);
  ModelParams c{100, 0.5, ConstantMu{0.3}, 0};
  CHECK(mu_of(c, 7) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("mu_of is non-increasing in i for the inverse-power rule") {
  ModelParams p{100, 0.5, InversePowerMu{3.0}, 0};
  double prev = mu_of(p, 1);
  for (std::int64_t i = 2; i <= 100; ++i) {
    const double cur = mu_of(p, i);
    CHECK(cur <= prev);
    prev = cur;
  }
}

TEST_CASE("rho(theta) (theta+1) = 1 across a logarithmic sweep") {
  for (int k = 0; k <= 60; ++k) {
    const double theta = std::pow(10.0, -3.0 + 6.0 * k / 60.0);
    const auto d = derived_quantities({theta, 1000});
    CHECK(d.rho * (theta + 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("n/N peaks at theta = sqrt(2) with maximum 3 - 2 sqrt(2)") {
  const double bound = 3.0 - 2.0 * std::sqrt(2.0);
  double best_theta = 0.0, best = 0.0;
  for (int k = 0; k <= 2000; ++k) {
    const double theta = 1.0 + k * (1.0 / 2000.0);  // [1, 2] brackets sqrt(2)
    const double f = derived_quantities({theta, 1000}).n_total / 1000.0;
    CHECK(f <= bound + 1e-12);
    if (f > best) {
      best = f;
      best_theta = theta;
    }
  }
  CHECK(best_theta == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
  CHECK(best == doctest::Approx(bound).epsilon(1e-6));
}

TEST_CASE("params validation") {
  ModelParams ok{3, 1.0, InversePowerMu{0.5}, 1};
  CHECK_NOTHROW(ok.validate());
  ModelParams small{2, 1.0, InversePowerMu{0.5}, 1};
  CHECK_THROWS_AS(small.validate(), std::domain_error);
  ModelParams nu0{10, 0.0, InversePowerMu{0.5}, 1};
  CHECK_THROWS_AS(nu0.validate(), std::domain_error);
  ModelParams mu2{10, 0.5, ConstantMu{1.5}, 1};
  CHECK_THROWS_AS(mu2.validate(), std::domain_error);
  CHECK(ModelParams{10, 0.5, InversePowerMu{0.25}, 1}.theta() == doctest::Approx(0.5));
  CHECK(!ModelParams{10, 0.5, ConstantMu{0.25}, 1}.theta().has_value());
}
