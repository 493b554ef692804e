#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>

namespace domino {

/// Triggering rule with a size-independent probability mu.
struct ConstantMu {
  double mu;  // (0, 1]
  bool operator==(const ConstantMu&) const = default;
};

/// Triggering rule mu_i = delta / i, so that every cluster is hit with the
/// same total rate regardless of its size.
struct InversePowerMu {
  double delta;  // > 0
  bool operator==(const InversePowerMu&) const = default;
};

using MuRule = std::variant<ConstantMu, InversePowerMu>;

/// Full parameter set of the automaton: ring size N, deposition probability
/// nu, triggering rule and RNG seed. Immutable value type; validate() throws
/// on out-of-range fields.
struct ModelParams {
  std::int64_t lattice_size = 0;  // N >= 3
  double nu = 0.0;                // (0, 1]
  MuRule mu_rule = InversePowerMu{1.0};
  std::uint64_t seed = 0;

  void validate() const {
    if (lattice_size < 3)
      throw std::domain_error("ModelParams: lattice_size must be >= 3");
    if (!(nu > 0.0) || nu > 1.0)
      throw std::domain_error("ModelParams: nu must lie in (0,1]");
    if (const auto* c = std::get_if<ConstantMu>(&mu_rule)) {
      if (!(c->mu > 0.0) || c->mu > 1.0)
        throw std::domain_error("ModelParams: constant mu must lie in (0,1]");
    } else {
      const auto& ip = std::get<InversePowerMu>(mu_rule);
      if (!(ip.delta > 0.0))
        throw std::domain_error("ModelParams: delta must be positive");
    }
  }

  bool operator==(const ModelParams&) const = default;

  /// theta = delta/nu for the inverse-power rule; empty otherwise.
  std::optional<double> theta() const {
    if (const auto* ip = std::get_if<InversePowerMu>(&mu_rule))
      return ip->delta / nu;
    return std::nullopt;
  }
};

/// Raw rule value mu_i without the probability clamp. The stationary-state
/// algebra is written in terms of these unclamped ratios.
inline double mu_unclamped(const ModelParams& params, std::int64_t cluster_size) {
  if (const auto* c = std::get_if<ConstantMu>(&params.mu_rule)) return c->mu;
  return std::get<InversePowerMu>(params.mu_rule).delta /
         static_cast<double>(cluster_size);
}

/// Effective triggering probability min(1, mu_i) used by the simulator.
inline double mu_of(const ModelParams& params, std::int64_t cluster_size) {
  const double mu = mu_unclamped(params, cluster_size);
  return mu < 1.0 ? mu : 1.0;
}

/// The one-parameter family mu_i = delta/i, summarized by theta = delta/nu.
struct InversePowerCase {
  double theta = 0.0;             // > 0
  std::int64_t lattice_size = 0;  // N >= 3

  void validate() const {
    if (!(theta > 0.0))
      throw std::domain_error("InversePowerCase: theta must be positive");
    if (lattice_size < 3)
      throw std::domain_error("InversePowerCase: lattice_size must be >= 3");
  }
};

/// Closed-form stationary aggregates of the inverse-power case.
struct DerivedQuantities {
  double rho = 0.0;       // density, 1/(theta+1)
  double n_total = 0.0;   // expected number of clusters
  double n1_empty = 0.0;  // expected number of isolated empty cells
};

/// rho = 1/(theta+1), n = N theta / ((theta+1)(theta+2)), n_1^0 = 2n/(3+2theta).
inline DerivedQuantities derived_quantities(const InversePowerCase& c) {
  c.validate();
  const double t = c.theta;
  const double N = static_cast<double>(c.lattice_size);
  DerivedQuantities d;
  d.rho = 1.0 / (t + 1.0);
  d.n_total = N * t / ((t + 1.0) * (t + 2.0));
  d.n1_empty = 2.0 * d.n_total / (3.0 + 2.0 * t);
  return d;
}

}  // namespace domino
