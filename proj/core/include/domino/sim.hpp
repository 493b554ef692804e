#pragma once

#include "domino/params.hpp"
#include "domino/rng.hpp"

#include <cstdint>
#include <vector>

namespace domino::sim {

/// Occupancy of N cells on a periodic ring, with a cached occupied-cell
/// count. recount() is the slow reference used in assertions and tests.
class LatticeState {
 public:
  explicit LatticeState(std::int64_t n) : cells_(static_cast<std::size_t>(n), 0) {
    if (n < 3) throw std::domain_error("LatticeState: ring needs at least 3 cells");
  }

  std::int64_t size() const { return static_cast<std::int64_t>(cells_.size()); }
  bool occupied(std::int64_t i) const { return cells_[static_cast<std::size_t>(i)] != 0; }
  std::int64_t occupied_count() const { return occupied_; }

  void occupy(std::int64_t i) {
    auto& c = cells_[static_cast<std::size_t>(i)];
    occupied_ += (c == 0);
    c = 1;
  }
  void clear(std::int64_t i) {
    auto& c = cells_[static_cast<std::size_t>(i)];
    occupied_ -= (c != 0);
    c = 0;
  }

  std::int64_t recount() const {
    std::int64_t k = 0;
    for (auto c : cells_) k += (c != 0);
    return k;
  }

  bool operator==(const LatticeState&) const = default;

 private:
  std::vector<std::uint8_t> cells_;
  std::int64_t occupied_ = 0;
};

/// Maximal occupied run through a cell. For the fully occupied ring the whole
/// ring is one cluster with begin = 0.
struct ClusterSpan {
  std::int64_t begin = 0;  // leftmost cell, in [0, N)
  std::int64_t size = 0;
};

/// Locate the cluster containing `pos`; throws std::invalid_argument if the
/// cell is empty. Handles wraparound across the ring seam.
ClusterSpan find_cluster(const LatticeState& state, std::int64_t pos);

enum class StepKind { DepositAccepted, DepositScattered, TriggerScattered, Avalanche };

struct StepEvent {
  StepKind kind = StepKind::DepositScattered;
  std::int64_t avalanche_size = 0;        // == cluster_size_before
  std::int64_t cluster_size_before = 0;   // size of the struck cluster
};

/// One ball: a uniform cell draw, then a single Bernoulli draw, in that fixed
/// order. An empty target fills with probability nu; an occupied target
/// topples its whole cluster with probability min(1, mu_i).
StepEvent step(LatticeState& state, const ModelParams& params, Rng& rng);

/// Time-averaged observables of one run (or a merged ensemble). Cluster
/// counts are kept per micro-batch so that standard errors can respect the
/// autocorrelation of the chain (see measure()).
struct SimStats {
  ModelParams params;
  std::int64_t steps = 0;        // per replica
  std::int64_t burn_in = 0;
  std::int64_t sample_every = 1;
  int replicas = 1;

  std::int64_t samples = 0;
  std::vector<std::int64_t> micro_samples;        // per micro-batch
  std::vector<std::vector<double>> micro_sums;    // micro-batch x cluster size
  std::vector<double> micro_density_sum;          // per micro-batch
  std::vector<double> density_trace;              // one entry per sample
  double empty_singleton_sum = 0.0;               // summed n_1^0 samples
  std::vector<std::int64_t> avalanche_hist;       // counts by avalanche size

  /// Time-averaged count of clusters of size i.
  double cluster_mean(std::int64_t size) const;

  bool operator==(const SimStats&) const = default;
};

std::int64_t default_burn_in(const ModelParams& params);
std::int64_t default_sample_every(std::int64_t lattice_size);

/// Run the automaton for `steps` steps from an empty ring, sampling the full
/// cluster histogram every `sample_every` steps once `burn_in` has passed.
/// Deterministic: the RNG is mt19937_64 seeded from splitmix64 stream
/// `replica` of params.seed.
SimStats run(const ModelParams& params, std::int64_t steps, std::int64_t burn_in,
             std::int64_t sample_every, int replica = 0);

/// Merge replica statistics by summation (micro-batches concatenate).
SimStats merge(const SimStats& a, const SimStats& b);

/// Run `replicas` independent streams in parallel (at most `max_threads`
/// concurrent; 0 = hardware concurrency) and merge them in replica order,
/// so the result does not depend on scheduling.
SimStats run_ensemble(const ModelParams& params, std::int64_t steps,
                      std::int64_t burn_in, std::int64_t sample_every,
                      int replicas, int max_threads = 0);

/// Empirical cluster distribution with batch-means standard errors.
struct EmpiricalDistribution {
  std::int64_t lattice_size = 0;
  std::int64_t samples = 0;
  int batches = 0;
  std::vector<double> n_hat;     // n_hat[k] estimates n_{k+1}
  std::vector<double> stderr_;   // same indexing
  double density_mean = 0.0;
  double density_stderr = 0.0;
  double empty_singleton_mean = 0.0;
};

/// Batch-means estimates: micro-batches are grouped into `batches` groups;
/// the spread of group means yields the standard errors. Requires at least
/// 2 samples and at least `batches` micro-batches.
EmpiricalDistribution measure(const SimStats& stats, int batches = 32);

}  // namespace domino::sim
