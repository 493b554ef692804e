#pragma once

#include "domino/exact.hpp"
#include "domino/sim.hpp"

#include <optional>
#include <span>
#include <vector>

namespace domino::analysis {

/// Residuals of the two balance laws, each normalized by its left-hand side:
///   (1-rho) N - 2n        = sum_i (mu_i/nu) i n_i
///   nu (1-rho)            = (1/N) sum_i mu_i i^2 n_i
/// The aggregates (rho, n) come from the distribution's `derived` block; the
/// sums run over the stored sequence, so truncation shows up as residual.
struct BalanceResiduals {
  double r_n = 0.0;
  double r_rho = 0.0;
};

BalanceResiduals balance_residuals(const exact::ClusterDistribution& dist,
                                   const ModelParams& params);

/// Least-squares power-law fit of log n_{i+1} against log i over [i_from, i_to].
/// Returns the positive exponent p of n ~ i^{-p} and a 95% half-width from
/// the OLS slope error.
struct TailFit {
  double exponent = 0.0;
  double half_width = 0.0;
};

TailFit fit_tail_exponent(std::span<const double> n, std::int64_t i_from,
                          std::int64_t i_to);

struct ComparisonRow {
  std::int64_t i = 0;
  double n_theory = 0.0;
  double n_hat = 0.0;
  double stderr_ = 0.0;
  double z = 0.0;
};

/// Theory-vs-simulation comparison. Sizes enter the chi-square only when the
/// expected total count (theory n_i times samples) reaches 10, the usual
/// sparse-cell guard for a calibrated statistic.
struct ComparisonReport {
  std::vector<ComparisonRow> per_i;
  double chi_square = 0.0;
  std::int64_t dof = 0;
  BalanceResiduals balance;
  std::optional<TailFit> tail;  // fitted on theory over the included range
};

ComparisonReport compare(const exact::ClusterDistribution& theory,
                         const sim::EmpiricalDistribution& empirical,
                         const ModelParams& params);

}  // namespace domino::analysis
