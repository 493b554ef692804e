#include "domino/analysis.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace domino;
using namespace domino::analysis;

namespace {

ModelParams ip_params(double theta, std::int64_t N) {
  // nu = 1 with delta = theta realizes the same mu_i/nu ratios
  return ModelParams{N, 1.0, InversePowerMu{theta}, 0};
}

}  // namespace

TEST_CASE("balance residuals vanish for the adaptive inverse-power solution") {
  const InversePowerCase c{1.0, 1000};
  const auto dist = exact::solve_inverse_power(c, exact::adaptive_i_max(c));
  const auto r = balance_residuals(dist, ip_params(1.0, 1000));
  CHECK(std::abs(r.r_n) < 1e-8);
  CHECK(std::abs(r.r_rho) < 1e-8);
}

TEST_CASE("balance residuals stay finite on a degenerate distribution") {
  exact::ClusterDistribution dist;
  dist.n.assign(10, 0.0);
  dist.lattice_size = 100;
  dist.derived = DerivedQuantities{1.0, 0.0, 0.0};  // rho = 1, nothing else
  const auto r = balance_residuals(dist, ip_params(0.5, 100));
  CHECK(std::isfinite(r.r_n));
  CHECK(std::isfinite(r.r_rho));
}

TEST_CASE("harsher truncation strictly worsens the cluster balance") {
  const InversePowerCase c{0.2, 1000};
  const auto r10 = balance_residuals(exact::solve_inverse_power(c, 10),
                                     ip_params(0.2, 1000));
  const auto r60 = balance_residuals(exact::solve_inverse_power(c, 60),
                                     ip_params(0.2, 1000));
  CHECK(std::abs(r10.r_n) > std::abs(r60.r_n));
  CHECK(std::abs(r10.r_rho) > std::abs(r60.r_rho));
}

TEST_CASE("residuals converge toward zero as the truncation grows") {
  const InversePowerCase c{0.5, 1000};
  double prev = 1e9;
  for (const std::int64_t im : {50, 100, 200, 400}) {
    const auto r = balance_residuals(exact::solve_inverse_power(c, im),
                                     ip_params(0.5, 1000));
    CHECK(std::abs(r.r_n) < prev);
    prev = std::abs(r.r_n);
  }
  CHECK(prev < 1e-8);
}

TEST_CASE("self-comparison gives zero chi-square") {
  const auto dist = exact::solve_inverse_power({0.5, 1000}, 100);
  sim::EmpiricalDistribution emp;
  emp.lattice_size = 1000;
  emp.samples = 100000;
  emp.n_hat = dist.n;
  emp.stderr_.assign(dist.n.size(), 0.01);
  const auto rep = compare(dist, emp, ip_params(0.5, 1000));
  CHECK(rep.chi_square == 0.0);
  CHECK(rep.dof > 50);
  for (const auto& row : rep.per_i) CHECK(row.z == 0.0);
}

TEST_CASE("a consistent synthetic sample lands in the calibrated band") {
  const auto dist = exact::solve_inverse_power({0.5, 1000}, 120);
  sim::EmpiricalDistribution emp;
  emp.lattice_size = 1000;
  emp.samples = 100000;
  std::mt19937_64 gen(99);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (double v : dist.n) {
    const double se = 0.02 * v + 1e-5;
    emp.n_hat.push_back(v + se * gauss(gen));
    emp.stderr_.push_back(se);
  }
  const auto rep = compare(dist, emp, ip_params(0.5, 1000));
  const double per_dof = rep.chi_square / static_cast<double>(rep.dof);
  CHECK(per_dof > 0.3);
  CHECK(per_dof < 3.0);
}

TEST_CASE("a wrong-theta model is flagged loudly") {
  // empirical data from theta = 0.5 against the theta = 1 theory
  const auto truth = exact::solve_inverse_power({0.5, 1000}, 120);
  const auto wrong = exact::solve_inverse_power({1.0, 1000}, 120);
  sim::EmpiricalDistribution emp;
  emp.lattice_size = 1000;
  emp.samples = 100000;
  std::mt19937_64 gen(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (double v : truth.n) {
    const double se = 0.02 * v + 1e-5;
    emp.n_hat.push_back(v + se * gauss(gen));
    emp.stderr_.push_back(se);
  }
  const auto rep = compare(wrong, emp, ip_params(1.0, 1000));
  CHECK(rep.chi_square / static_cast<double>(rep.dof) > 10.0);
}

TEST_CASE("compare validates its inputs") {
  const auto dist = exact::solve_inverse_power({0.5, 1000}, 50);
  sim::EmpiricalDistribution emp;
  emp.lattice_size = 500;  // mismatched N
  emp.samples = 1000;
  emp.n_hat.assign(10, 1.0);
  emp.stderr_.assign(10, 0.1);
  CHECK_THROWS_AS(compare(dist, emp, ip_params(0.5, 1000)), std::invalid_argument);
  emp.lattice_size = 1000;
  emp.n_hat.clear();
  emp.stderr_.clear();
  CHECK_THROWS_AS(compare(dist, emp, ip_params(0.5, 1000)), std::invalid_argument);
}

TEST_CASE("tail fit recovers an exact power law") {
  std::vector<double> n(80, 0.0);
  for (std::size_t i = 5; i < 80; ++i)
    n[i] = std::pow(static_cast<double>(i), -2.0);  // n_{i+1} = i^{-2}
  const auto fit = fit_tail_exponent(n, 10, 70);
  CHECK(fit.exponent == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fit.half_width < 1e-10);
}

TEST_CASE("tail fit: a geometric factor inflates the apparent exponent") {
  auto synth = [](double p, double g) {
    std::vector<double> n(120, 0.0);
    for (std::size_t i = 10; i < 120; ++i)
      n[i] = 5.0 * std::pow(static_cast<double>(i), -p) *
             std::pow(g, static_cast<double>(i));
    return n;
  };
  const auto clean = fit_tail_exponent(synth(1.7, 1.0), 20, 100);
  CHECK(clean.exponent == doctest::Approx(1.7).epsilon(1e-10));
  const auto damped = fit_tail_exponent(synth(1.7, 0.97), 20, 100);
  CHECK(damped.exponent > 1.7 + 0.5);
}

TEST_CASE("tail fit input validation") {
  std::vector<double> n(30, 1.0);
  n[20] = 0.0;
  CHECK_THROWS_AS(fit_tail_exponent(n, 15, 25), std::domain_error);
  CHECK_THROWS_AS(fit_tail_exponent(n, 10, 40), std::invalid_argument);
  CHECK_THROWS_AS(fit_tail_exponent(n, 10, 10), std::invalid_argument);
  CHECK_THROWS_AS(fit_tail_exponent(n, 0, 10), std::invalid_argument);
}

TEST_CASE("the theta -> 0 limit form shows the 3/2 tail exponent") {
  std::vector<double> n(202, 0.0);
  for (std::int64_t i = 2; i <= 201; ++i)
    n[static_cast<std::size_t>(i - 1)] =
        series::asymptotic_ni(i, 1.0, series::MotzkinSource::Exact);
  const auto fit = fit_tail_exponent(n, 50, 200);
  CHECK(std::abs(fit.exponent - 1.5) < 0.05);
  CHECK(fit.exponent == doctest::Approx(1.4764).epsilon(0.004));  // frozen value
}

TEST_CASE("at moderate theta the effective exponent exceeds 3/2") {
  const auto dist = exact::solve_inverse_power({1.0, 1000}, 80);
  const auto fit = fit_tail_exponent(dist.n, 20, 70);
  CHECK(fit.exponent > 1.5);
}
