#pragma once

#include "domino/params.hpp"
#include "domino/series.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace domino::exact {

/// Expected stationary cluster counts n_1..n_{i_max}. Entry n[k] holds
/// n_{k+1}. `derived` carries the aggregates (rho, n, n_1^0) the sequence
/// was solved against.
struct ClusterDistribution {
  std::vector<double> n;
  std::int64_t lattice_size = 0;
  std::optional<double> theta;  // set for the inverse-power family
  DerivedQuantities derived;

  std::int64_t i_max() const { return static_cast<std::int64_t>(n.size()); }
  double n_of(std::int64_t i) const { return n.at(static_cast<std::size_t>(i - 1)); }
};

/// Constants of the variable change c_i = (beta / alpha^{i+1}) n_{i+1}.
struct TransformConstants {
  double alpha = 0.0;
  double beta = 0.0;
};

/// alpha(theta) = (2/(theta+2)) (2theta+1)/(2theta+3); defined for theta >= 0,
/// alpha(0) = 1/3. Not monotone: it rises to ~0.404 near theta = 0.725 before
/// decaying, and is strictly decreasing for theta >= 1.
double transform_alpha(double theta);

/// Both transform constants; beta has a pole at theta = 0, so theta > 0 is
/// required here.
TransformConstants transform_constants(const InversePowerCase& c);

/// Truncation order such that the estimated geometric tail of sum_i i*n_i is
/// below 1e-9 * rho * N.
std::int64_t adaptive_i_max(const InversePowerCase& c);

/// Solve the inverse-power stationary recurrence
///   n_1     = N theta / ((theta+1)(theta+2)^2) * (theta + 2/(2 theta + 3)),
///   n_2     = alpha n_1,
///   n_{i+1} = alpha n_i + (2/(N theta)) ((theta+1)/(2 theta+3))
///               * sum_{k=1}^{i-1} n_k n_{i-k}          (i >= 2).
/// Throws std::overflow_error if any n_i becomes non-finite.
ClusterDistribution solve_inverse_power(const InversePowerCase& c, std::int64_t i_max);

/// Map n to c coefficients: c_i = (beta / alpha^{i+1}) n_{i+1}. Errors out if
/// alpha^{i+1} underflows rather than silently producing zeros.
series::CoeffSequence n_to_c(const ClusterDistribution& dist, const TransformConstants& tc);

/// Exact inverse of n_to_c.
ClusterDistribution c_to_n(const series::CoeffSequence& c, const TransformConstants& tc,
                           const InversePowerCase& cs);

/// Trial aggregates for the general stationary system.
struct StationaryAggregates {
  double n_total = 0.0;
  double rho = 0.0;
  double n1_empty = 0.0;
};

/// Evaluate the general stationary equations
///   n_1 = ((1-rho)N - 2n + n_1^0) / (mu_1/nu + 2)
///   n_2 = (2 / (2 mu_2/nu + 2)) (1 - n_1^0/n) n_1
///   n_i = (2 n_{i-1}(1 - n_1^0/n) + n_1^0 sum n_k n_{i-1-k} / n^2)
///           / (mu_i i / nu + 2)                        (i >= 3)
/// at fixed trial aggregates. Throws std::runtime_error on a negative entry
/// (bad parameters or truncation too small).
std::vector<double> eval_stationary_sequence(const ModelParams& params,
                                             const StationaryAggregates& agg,
                                             std::int64_t i_max);

/// Aggregates of a sequence: n = sum n_i, rho = sum i n_i / N, and
/// n_1^0 = 2n / (3 + 2 sum mu_i i n_i / (nu n)).
StationaryAggregates aggregates_of(const ModelParams& params,
                                   const std::vector<double>& n);

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& msg, double last_delta)
      : std::runtime_error(msg), last_delta(last_delta) {}
  double last_delta;
};

struct GeneralSolveResult {
  ClusterDistribution dist;
  int iterations = 0;    // damped fixed-point sweeps until convergence
  double last_delta = 0; // max-norm change of the final sweep
};

/// Damped fixed-point solution of the general system: aggregates generate a
/// sequence, the sequence regenerates aggregates, repeated (damping 0.5)
/// until successive sequences differ by less than `tol` in max-norm.
/// Internally the truncation is extended past i_max until the estimated tail
/// of sum i*n_i is negligible at the requested tolerance, so the recomputed
/// aggregates faithfully represent the infinite sums; the returned
/// distribution is cut back to i_max entries.
GeneralSolveResult solve_general(const ModelParams& params, std::int64_t i_max,
                                 double tol = 1e-10, int max_iter = 500);

}  // namespace domino::exact
