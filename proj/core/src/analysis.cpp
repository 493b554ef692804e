#include "domino/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace domino::analysis {

BalanceResiduals balance_residuals(const exact::ClusterDistribution& dist,
                                   const ModelParams& params) {
  const double N = static_cast<double>(dist.lattice_size);
  const double rho = dist.derived.rho;
  const double n = dist.derived.n_total;

  double weighted = 0.0;   // sum (mu_i/nu) i n_i
  double weighted2 = 0.0;  // sum mu_i i^2 n_i
  for (std::size_t k = 0; k < dist.n.size(); ++k) {
    const double i = static_cast<double>(k + 1);
    const double mu = mu_unclamped(params, static_cast<std::int64_t>(k + 1));
    weighted += mu / params.nu * i * dist.n[k];
    weighted2 += mu * i * i * dist.n[k];
  }

  const double lhs_n = (1.0 - rho) * N - 2.0 * n;
  const double lhs_rho = params.nu * (1.0 - rho);
  BalanceResiduals r;
  r.r_n = (lhs_n - weighted) / (std::abs(lhs_n) > 0.0 ? std::abs(lhs_n) : 1.0);
  r.r_rho = (lhs_rho - weighted2 / N) /
            (std::abs(lhs_rho) > 0.0 ? std::abs(lhs_rho) : 1.0);
  return r;
}

TailFit fit_tail_exponent(std::span<const double> n, std::int64_t i_from,
                          std::int64_t i_to) {
  if (i_from < 1 || i_to <= i_from)
    throw std::invalid_argument("fit_tail_exponent: need 1 <= i_from < i_to");
  if (static_cast<std::size_t>(i_to + 1) > n.size())
    throw std::invalid_argument(
        "fit_tail_exponent: sequence too short; need n up to index i_to+1");

  const std::size_t m = static_cast<std::size_t>(i_to - i_from + 1);
  std::vector<double> xs(m), ys(m);
  for (std::int64_t i = i_from; i <= i_to; ++i) {
    const double v = n[static_cast<std::size_t>(i)];  // n_{i+1}
    if (!(v > 0.0))
      throw std::domain_error("fit_tail_exponent: nonpositive n_" +
                              std::to_string(i + 1) + " in fit range");
    xs[static_cast<std::size_t>(i - i_from)] = std::log(static_cast<double>(i));
    ys[static_cast<std::size_t>(i - i_from)] = std::log(v);
  }

  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;

  double sse = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double r = ys[k] - (intercept + slope * xs[k]);
    sse += r * r;
  }
  TailFit fit;
  fit.exponent = -slope;
  fit.half_width =
      m > 2 ? 1.96 * std::sqrt(sse / static_cast<double>(m - 2) / sxx) : 0.0;
  return fit;
}

ComparisonReport compare(const exact::ClusterDistribution& theory,
                         const sim::EmpiricalDistribution& empirical,
                         const ModelParams& params) {
  if (theory.lattice_size != empirical.lattice_size)
    throw std::invalid_argument("compare: lattice sizes differ (" +
                                std::to_string(theory.lattice_size) + " vs " +
                                std::to_string(empirical.lattice_size) + ")");
  const std::int64_t overlap = std::min<std::int64_t>(
      theory.i_max(), static_cast<std::int64_t>(empirical.n_hat.size()));
  if (overlap < 1)
    throw std::invalid_argument("compare: no overlapping cluster sizes");

  ComparisonReport rep;
  rep.balance = balance_residuals(theory, params);
  const double samples = static_cast<double>(empirical.samples);

  std::int64_t lo = 0, hi = 0;
  for (std::int64_t i = 1; i <= overlap; ++i) {
    ComparisonRow row;
    row.i = i;
    row.n_theory = theory.n_of(i);
    row.n_hat = empirical.n_hat[static_cast<std::size_t>(i - 1)];
    row.stderr_ = empirical.stderr_[static_cast<std::size_t>(i - 1)];
    const bool included = row.n_theory * samples >= 10.0 && row.stderr_ > 0.0;
    if (row.stderr_ > 0.0) row.z = (row.n_hat - row.n_theory) / row.stderr_;
    if (included) {
      rep.chi_square += row.z * row.z;
      rep.dof += 1;
      if (lo == 0) lo = i;
      hi = i;
    }
    rep.per_i.push_back(row);
  }
  if (rep.dof == 0)
    throw std::invalid_argument(
        "compare: no size had the 10 expected counts needed for chi-square");
  if (hi - lo >= 2) rep.tail = fit_tail_exponent(theory.n, lo, hi - 1);
  return rep;
}

}  // namespace domino::analysis
