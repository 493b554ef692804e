#include "domino/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace domino::exact {

namespace {

constexpr std::int64_t kAdaptiveCap = 200000;

struct RecurrenceCoeffs {
  double alpha;  // linear term
  double gamma;  // convolution prefactor 2(theta+1)/(N theta (2theta+3))
  double n1;
};

RecurrenceCoeffs coeffs_of(const InversePowerCase& c) {
  const double t = c.theta;
  const double N = static_cast<double>(c.lattice_size);
  RecurrenceCoeffs rc;
  rc.alpha = transform_alpha(t);
  rc.gamma = (2.0 / (N * t)) * ((t + 1.0) / (2.0 * t + 3.0));
  rc.n1 = N * t / ((t + 1.0) * (t + 2.0) * (t + 2.0)) * (t + 2.0 / (2.0 * t + 3.0));
  return rc;
}

// Extend n (holding n_1..n_{len}) up to `upto` entries via the recurrence.
void extend(std::vector<double>& n, const RecurrenceCoeffs& rc, std::size_t upto) {
  if (n.empty()) {
    n.push_back(rc.n1);
    if (!std::isfinite(n.back()))
      throw std::overflow_error("solve_inverse_power: n_1 is not finite");
  }
  if (upto >= 2 && n.size() == 1) n.push_back(rc.alpha * n[0]);
  while (n.size() < upto) {
    const std::size_t i = n.size();  // producing n_{i+1}
    // sum_{k=1}^{i-1} n_k n_{i-k}, folded symmetrically
    double conv = 0.0;
    for (std::size_t k = 1; 2 * k < i; ++k) conv += n[k - 1] * n[i - k - 1];
    conv *= 2.0;
    if (i % 2 == 0) conv += n[i / 2 - 1] * n[i / 2 - 1];
    n.push_back(rc.alpha * n[i - 1] + rc.gamma * conv);
    if (!std::isfinite(n.back()))
      throw std::overflow_error("solve_inverse_power: n_" +
                                std::to_string(i + 1) + " is not finite");
  }
}

// Upper estimate of sum_{j>I} j n_j assuming a geometric tail. The observed
// ratio n_I/n_{I-1} approaches its limit from below like (1 - 3/(2I)); undo
// that factor before extrapolating.
double tail_bound_weighted(const std::vector<double>& n) {
  const std::size_t I = n.size();
  if (I < 3) return std::numeric_limits<double>::infinity();
  const double last = n[I - 1];
  if (last <= 0.0) return 0.0;
  const double ratio = last / n[I - 2];
  const double xI = static_cast<double>(I);
  double g = ratio * std::pow(xI / (xI - 1.0), 1.5) * 1.001;
  if (g >= 0.999999) return std::numeric_limits<double>::infinity();
  if (g <= 0.0) return 0.0;
  // sum_{k>=1} (I+k) g^k = g (I (1-g) + 1) / (1-g)^2
  return last * g * (xI * (1.0 - g) + 1.0) / ((1.0 - g) * (1.0 - g));
}

}  // namespace

double transform_alpha(double theta) {
  if (!(theta >= 0.0))
    throw std::domain_error("transform_alpha: theta must be >= 0");
  return (2.0 / (theta + 2.0)) * ((2.0 * theta + 1.0) / (2.0 * theta + 3.0));
}

TransformConstants transform_constants(const InversePowerCase& c) {
  c.validate();  // theta > 0: beta has a pole at theta = 0
  const double t = c.theta;
  const double N = static_cast<double>(c.lattice_size);
  TransformConstants tc;
  tc.alpha = transform_alpha(t);
  tc.beta = (t + 1.0) * (t + 2.0) / (N * t * (2.0 * t + 1.0));
  return tc;
}

std::int64_t adaptive_i_max(const InversePowerCase& c) {
  c.validate();
  const auto d = derived_quantities(c);
  const double target = 1e-9 * d.rho * static_cast<double>(c.lattice_size);
  const auto rc = coeffs_of(c);
  std::vector<double> n;
  std::size_t upto = 32;
  for (;;) {
    extend(n, rc, upto);
    if (tail_bound_weighted(n) < target) break;
    if (static_cast<std::int64_t>(upto) >= kAdaptiveCap) break;
    upto = std::min<std::size_t>(upto * 2, kAdaptiveCap);
  }
  // shrink back to the first index where the bound is met
  std::vector<double> probe(n.begin(), n.begin() + 3);
  std::size_t lo = 3;
  while (lo < n.size()) {
    if (tail_bound_weighted(probe) < target) break;
    probe.push_back(n[lo++]);
  }
  return static_cast<std::int64_t>(std::max<std::size_t>(lo, 2));
}

ClusterDistribution solve_inverse_power(const InversePowerCase& c, std::int64_t i_max) {
  c.validate();
  if (i_max < 1) throw std::domain_error("solve_inverse_power: i_max must be >= 1");
  const auto rc = coeffs_of(c);
  std::vector<double> n;
  extend(n, rc, static_cast<std::size_t>(i_max));
  ClusterDistribution dist;
  dist.n = std::move(n);
  dist.lattice_size = c.lattice_size;
  dist.theta = c.theta;
  dist.derived = derived_quantities(c);
  return dist;
}

series::CoeffSequence n_to_c(const ClusterDistribution& dist, const TransformConstants& tc) {
  series::CoeffSequence s;
  s.mode = series::CoeffMode::Float64;
  s.values.reserve(dist.n.size());
  double apow = 1.0;
  for (std::size_t i = 0; i < dist.n.size(); ++i) {
    apow *= tc.alpha;
    if (!(apow >= std::numeric_limits<double>::min()))
      throw std::range_error("n_to_c: alpha^" + std::to_string(i + 1) +
                             " underflow; reduce i_max");
    s.values.push_back(tc.beta / apow * dist.n[i]);
  }
  return s;
}

ClusterDistribution c_to_n(const series::CoeffSequence& c, const TransformConstants& tc,
                           const InversePowerCase& cs) {
  cs.validate();
  ClusterDistribution dist;
  dist.lattice_size = cs.lattice_size;
  dist.theta = cs.theta;
  dist.derived = derived_quantities(cs);
  dist.n.reserve(c.size());
  double apow = 1.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    apow *= tc.alpha;
    if (!(apow >= std::numeric_limits<double>::min()))
      throw std::range_error("c_to_n: alpha^" + std::to_string(i + 1) +
                             " underflow; reduce sequence length");
    dist.n.push_back(apow / tc.beta * c.as_double(i));
  }
  return dist;
}

std::vector<double> eval_stationary_sequence(const ModelParams& params,
                                             const StationaryAggregates& agg,
                                             std::int64_t i_max) {
  params.validate();
  if (i_max < 1) throw std::domain_error("eval_stationary_sequence: i_max >= 1");
  const double N = static_cast<double>(params.lattice_size);
  const double nu = params.nu;
  const double n = agg.n_total;
  const double rho = agg.rho;
  const double n10 = agg.n1_empty;
  if (!(n > 0.0))
    throw std::runtime_error("eval_stationary_sequence: aggregate n must be positive");

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(i_max));
  auto guard = [&](double v, std::size_t i) {
    if (!std::isfinite(v) || v < 0.0)
      throw std::runtime_error("eval_stationary_sequence: n_" + std::to_string(i) +
                               " = " + std::to_string(v) +
                               " (bad parameters or i_max too small)");
    return v;
  };

  const double hole = 1.0 - n10 / n;
  out.push_back(guard(((1.0 - rho) * N - 2.0 * n + n10) /
                          (mu_unclamped(params, 1) / nu + 2.0),
                      1));
  if (i_max >= 2)
    out.push_back(guard(2.0 / (2.0 * mu_unclamped(params, 2) / nu + 2.0) * hole * out[0], 2));
  for (std::int64_t i = 3; i <= i_max; ++i) {
    // sum_{k=1}^{i-2} n_k n_{i-1-k}
    double conv = 0.0;
    const std::int64_t m = i - 1;
    for (std::int64_t k = 1; 2 * k < m; ++k)
      conv += out[static_cast<std::size_t>(k - 1)] * out[static_cast<std::size_t>(m - k - 1)];
    conv *= 2.0;
    if (m % 2 == 0) {
      const double mid = out[static_cast<std::size_t>(m / 2 - 1)];
      conv += mid * mid;
    }
    const double denom = mu_unclamped(params, i) * static_cast<double>(i) / nu + 2.0;
    const double v = (2.0 * out[static_cast<std::size_t>(i - 2)] * hole +
                      n10 * conv / (n * n)) /
                     denom;
    out.push_back(guard(v, static_cast<std::size_t>(i)));
  }
  return out;
}

StationaryAggregates aggregates_of(const ModelParams& params,
                                   const std::vector<double>& n) {
  StationaryAggregates a;
  double weighted = 0.0;  // sum i n_i
  double rate = 0.0;      // sum mu_i i n_i
  for (std::size_t k = 0; k < n.size(); ++k) {
    const double i = static_cast<double>(k + 1);
    a.n_total += n[k];
    weighted += i * n[k];
    rate += mu_unclamped(params, static_cast<std::int64_t>(k + 1)) * i * n[k];
  }
  a.rho = weighted / static_cast<double>(params.lattice_size);
  a.n1_empty = a.n_total > 0.0
                   ? 2.0 * a.n_total / (3.0 + 2.0 * rate / (params.nu * a.n_total))
                   : 0.0;
  return a;
}

GeneralSolveResult solve_general(const ModelParams& params, std::int64_t i_max,
                                 double tol, int max_iter) {
  params.validate();
  if (i_max < 1) throw std::domain_error("solve_general: i_max must be >= 1");
  if (!(tol > 0.0)) throw std::domain_error("solve_general: tol must be positive");

  // Initial guess: the solved inverse-power family at theta_hat = mu_1/nu.
  double theta_hat = mu_unclamped(params, 1) / params.nu;
  if (!std::isfinite(theta_hat) || theta_hat <= 0.0) theta_hat = 1.0;
  theta_hat = std::clamp(theta_hat, 1e-6, 1e6);
  StationaryAggregates agg;
  {
    const auto d = derived_quantities({theta_hat, params.lattice_size});
    agg.n_total = d.n_total;
    agg.rho = d.rho;
    agg.n1_empty = d.n1_empty;
  }

  const double N = static_cast<double>(params.lattice_size);
  const double damping = 0.5;
  std::int64_t working = std::max<std::int64_t>(i_max, 64);
  int iterations = 0;
  double delta = std::numeric_limits<double>::infinity();
  std::vector<double> seq = eval_stationary_sequence(params, agg, working);

  // Size the truncation on the initial sequence before iterating: the
  // recomputed aggregates stand in for infinite sums, and a short truncation
  // would drag the fixed point away from the true one.
  auto tail_target = [&] { return agg.rho * N * std::min(1e-9, 0.01 * tol); };
  while (tail_bound_weighted(seq) >= tail_target() && working < kAdaptiveCap) {
    working = std::min<std::int64_t>(working * 2, kAdaptiveCap);
    seq = eval_stationary_sequence(params, agg, working);
  }

  for (;;) {
    bool converged = false;
    while (iterations < max_iter) {
      ++iterations;
      const auto next = aggregates_of(params, seq);
      agg.n_total += damping * (next.n_total - agg.n_total);
      agg.rho += damping * (next.rho - agg.rho);
      agg.n1_empty += damping * (next.n1_empty - agg.n1_empty);
      auto fresh = eval_stationary_sequence(params, agg, working);
      delta = 0.0;
      for (std::size_t k = 0; k < fresh.size(); ++k)
        delta = std::max(delta, std::abs(fresh[k] - seq[k]));
      seq = std::move(fresh);
      if (delta < tol) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw ConvergenceError("solve_general: no convergence after " +
                                 std::to_string(max_iter) +
                                 " iterations (last delta " + std::to_string(delta) + ")",
                             delta);
    // Re-check the truncation on the converged sequence; its tail can be
    // heavier than the initial guess suggested.
    if (tail_bound_weighted(seq) < tail_target() || working >= kAdaptiveCap) break;
    working = std::min<std::int64_t>(working * 2, kAdaptiveCap);
    seq = eval_stationary_sequence(params, agg, working);
  }

  GeneralSolveResult res;
  res.iterations = iterations;
  res.last_delta = delta;
  const auto final_agg = aggregates_of(params, seq);
  seq.resize(static_cast<std::size_t>(i_max));
  res.dist.n = std::move(seq);
  res.dist.lattice_size = params.lattice_size;
  res.dist.theta = params.theta();
  res.dist.derived = DerivedQuantities{final_agg.rho, final_agg.n_total, final_agg.n1_empty};
  return res;
}

}  // namespace domino::exact
