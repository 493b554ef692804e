#include "domino/sim.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace domino::sim {

namespace {

constexpr std::int64_t kMicroBatchTarget = 256;

void add_count(std::vector<double>& v, std::int64_t size, double amount) {
  if (static_cast<std::size_t>(size) >= v.size())
    v.resize(static_cast<std::size_t>(size) + 1, 0.0);
  v[static_cast<std::size_t>(size)] += amount;
}

void add_count(std::vector<std::int64_t>& v, std::int64_t size) {
  if (static_cast<std::size_t>(size) >= v.size())
    v.resize(static_cast<std::size_t>(size) + 1, 0);
  v[static_cast<std::size_t>(size)] += 1;
}

// Cluster histogram of the whole ring in one sweep, anchored at an empty
// cell so no occupied run is split across the seam.
void sample_clusters(const LatticeState& s, std::vector<double>& sums,
                     std::int64_t& n10_out) {
  const std::int64_t N = s.size();
  const std::int64_t occ = s.occupied_count();
  n10_out = 0;
  if (occ == 0) return;
  if (occ == N) {
    add_count(sums, N, 1.0);
    return;
  }
  std::int64_t anchor = 0;
  while (s.occupied(anchor)) ++anchor;
  std::int64_t run = 0;
  for (std::int64_t k = 1; k <= N; ++k) {
    std::int64_t pos = anchor + k;
    if (pos >= N) pos -= N;
    if (s.occupied(pos)) {
      ++run;
    } else if (run > 0) {
      add_count(sums, run, 1.0);
      run = 0;
    }
  }
  for (std::int64_t j = 0; j < N; ++j) {
    if (s.occupied(j)) continue;
    const std::int64_t l = j == 0 ? N - 1 : j - 1;
    const std::int64_t r = j == N - 1 ? 0 : j + 1;
    n10_out += (s.occupied(l) && s.occupied(r));
  }
}

}  // namespace

ClusterSpan find_cluster(const LatticeState& state, std::int64_t pos) {
  if (!state.occupied(pos))
    throw std::invalid_argument("find_cluster: cell " + std::to_string(pos) +
                                " is empty");
  const std::int64_t N = state.size();
  if (state.occupied_count() == N) return {0, N};
  std::int64_t l = pos;
  for (;;) {
    const std::int64_t prev = l == 0 ? N - 1 : l - 1;
    if (!state.occupied(prev)) break;
    l = prev;
  }
  std::int64_t r = pos;
  for (;;) {
    const std::int64_t next = r == N - 1 ? 0 : r + 1;
    if (!state.occupied(next)) break;
    r = next;
  }
  std::int64_t size = r - l + 1;
  if (size <= 0) size += N;  // run wraps the seam
  return {l, size};
}

StepEvent step(LatticeState& state, const ModelParams& params, Rng& rng) {
  const std::int64_t pos = rng.uniform_below(state.size());
  const double u = rng.uniform01();
  if (!state.occupied(pos)) {
    if (u < params.nu) {
      state.occupy(pos);
      return {StepKind::DepositAccepted, 0, 0};
    }
    return {StepKind::DepositScattered, 0, 0};
  }
  const ClusterSpan span = find_cluster(state, pos);
  if (u < mu_of(params, span.size)) {
    const std::int64_t N = state.size();
    std::int64_t cell = span.begin;
    for (std::int64_t k = 0; k < span.size; ++k) {
      state.clear(cell);
      cell = cell == N - 1 ? 0 : cell + 1;
    }
    return {StepKind::Avalanche, span.size, span.size};
  }
  return {StepKind::TriggerScattered, 0, span.size};
}

std::int64_t default_burn_in(const ModelParams& params) {
  // several fill/relax turnovers
  return static_cast<std::int64_t>(
      10.0 * static_cast<double>(params.lattice_size) / params.nu);
}

std::int64_t default_sample_every(std::int64_t lattice_size) {
  return std::max<std::int64_t>(1, lattice_size / 10);
}

SimStats run(const ModelParams& params, std::int64_t steps, std::int64_t burn_in,
             std::int64_t sample_every, int replica) {
  params.validate();
  if (burn_in < 0 || steps <= burn_in)
    throw std::invalid_argument("run: need steps > burn_in >= 0");
  if (sample_every < 1) throw std::invalid_argument("run: sample_every >= 1");

  SimStats st;
  st.params = params;
  st.steps = steps;
  st.burn_in = burn_in;
  st.sample_every = sample_every;
  st.replicas = 1;
  st.samples = (steps - 1 - burn_in) / sample_every + 1;

  const std::int64_t micro = std::min<std::int64_t>(kMicroBatchTarget, st.samples);
  st.micro_samples.assign(static_cast<std::size_t>(micro), 0);
  st.micro_sums.assign(static_cast<std::size_t>(micro), {});
  st.micro_density_sum.assign(static_cast<std::size_t>(micro), 0.0);
  st.density_trace.reserve(static_cast<std::size_t>(st.samples));

  Rng rng(stream_seed(params.seed, static_cast<std::uint64_t>(replica)));
  LatticeState state(params.lattice_size);
  const double N = static_cast<double>(params.lattice_size);

  std::int64_t sample_index = 0;
  for (std::int64_t t = 0; t < steps; ++t) {
    const StepEvent ev = step(state, params, rng);
    if (t < burn_in) continue;
    if (ev.kind == StepKind::Avalanche) add_count(st.avalanche_hist, ev.avalanche_size);
    if ((t - burn_in) % sample_every == 0) {
      assert(state.recount() == state.occupied_count());
      const std::size_t m =
          static_cast<std::size_t>(sample_index * micro / st.samples);
      std::int64_t n10 = 0;
      sample_clusters(state, st.micro_sums[m], n10);
      st.micro_samples[m] += 1;
      const double rho = static_cast<double>(state.occupied_count()) / N;
      st.micro_density_sum[m] += rho;
      st.density_trace.push_back(rho);
      st.empty_singleton_sum += static_cast<double>(n10);
      ++sample_index;
    }
  }

  // uniform histogram width across micro-batches
  std::size_t width = 0;
  for (const auto& v : st.micro_sums) width = std::max(width, v.size());
  for (auto& v : st.micro_sums) v.resize(width, 0.0);
  return st;
}

double SimStats::cluster_mean(std::int64_t size) const {
  if (samples == 0) return 0.0;
  double total = 0.0;
  for (const auto& v : micro_sums)
    if (static_cast<std::size_t>(size) < v.size())
      total += v[static_cast<std::size_t>(size)];
  return total / static_cast<double>(samples);
}

SimStats merge(const SimStats& a, const SimStats& b) {
  if (a.steps != b.steps || a.burn_in != b.burn_in ||
      a.sample_every != b.sample_every ||
      a.params.lattice_size != b.params.lattice_size)
    throw std::invalid_argument("merge: incompatible run specifications");
  SimStats out = a;
  out.replicas = a.replicas + b.replicas;
  out.samples = a.samples + b.samples;
  out.micro_samples.insert(out.micro_samples.end(), b.micro_samples.begin(),
                           b.micro_samples.end());
  out.micro_sums.insert(out.micro_sums.end(), b.micro_sums.begin(),
                        b.micro_sums.end());
  out.micro_density_sum.insert(out.micro_density_sum.end(),
                               b.micro_density_sum.begin(),
                               b.micro_density_sum.end());
  out.density_trace.insert(out.density_trace.end(), b.density_trace.begin(),
                           b.density_trace.end());
  out.empty_singleton_sum += b.empty_singleton_sum;
  if (out.avalanche_hist.size() < b.avalanche_hist.size())
    out.avalanche_hist.resize(b.avalanche_hist.size(), 0);
  for (std::size_t i = 0; i < b.avalanche_hist.size(); ++i)
    out.avalanche_hist[i] += b.avalanche_hist[i];
  std::size_t width = 0;
  for (const auto& v : out.micro_sums) width = std::max(width, v.size());
  for (auto& v : out.micro_sums) v.resize(width, 0.0);
  return out;
}

SimStats run_ensemble(const ModelParams& params, std::int64_t steps,
                      std::int64_t burn_in, std::int64_t sample_every,
                      int replicas, int max_threads) {
  if (replicas < 1) throw std::invalid_argument("run_ensemble: replicas >= 1");
  if (replicas == 1) return run(params, steps, burn_in, sample_every, 0);

  unsigned threads = max_threads > 0 ? static_cast<unsigned>(max_threads)
                                     : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(replicas)));

  std::vector<SimStats> results(static_cast<std::size_t>(replicas));
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int r = static_cast<int>(t); r < replicas; r += static_cast<int>(threads))
        results[static_cast<std::size_t>(r)] =
            run(params, steps, burn_in, sample_every, r);
    });
  }
  for (auto& th : pool) th.join();

  SimStats merged = std::move(results[0]);
  for (int r = 1; r < replicas; ++r)
    merged = merge(merged, results[static_cast<std::size_t>(r)]);
  return merged;
}

EmpiricalDistribution measure(const SimStats& stats, int batches) {
  if (stats.samples < 2)
    throw std::invalid_argument("measure: need at least 2 samples");
  const std::int64_t micro = static_cast<std::int64_t>(stats.micro_samples.size());
  if (batches < 2 || micro < batches)
    throw std::invalid_argument(
        "measure: too few samples for batching (" + std::to_string(micro) +
        " micro-batches, " + std::to_string(batches) + " requested batches)");

  const std::size_t width =
      stats.micro_sums.empty() ? 0 : stats.micro_sums.front().size();
  const auto B = static_cast<std::size_t>(batches);
  std::vector<std::int64_t> gsamples(B, 0);
  std::vector<std::vector<double>> gsums(B, std::vector<double>(width, 0.0));
  std::vector<double> gdensity(B, 0.0);
  for (std::int64_t m = 0; m < micro; ++m) {
    const std::size_t g = static_cast<std::size_t>(m * batches / micro);
    gsamples[g] += stats.micro_samples[static_cast<std::size_t>(m)];
    gdensity[g] += stats.micro_density_sum[static_cast<std::size_t>(m)];
    const auto& src = stats.micro_sums[static_cast<std::size_t>(m)];
    for (std::size_t i = 0; i < width; ++i) gsums[g][i] += src[i];
  }
  for (auto s : gsamples)
    if (s == 0)
      throw std::invalid_argument("measure: a batch received no samples");

  EmpiricalDistribution emp;
  emp.lattice_size = stats.params.lattice_size;
  emp.samples = stats.samples;
  emp.batches = batches;
  emp.empty_singleton_mean =
      stats.empty_singleton_sum / static_cast<double>(stats.samples);

  const double total_samples = static_cast<double>(stats.samples);
  emp.n_hat.assign(width > 0 ? width - 1 : 0, 0.0);
  emp.stderr_.assign(emp.n_hat.size(), 0.0);
  // index k of n_hat corresponds to cluster size k+1
  for (std::size_t sz = 1; sz < width; ++sz) {
    double total = 0.0;
    std::vector<double> means(B, 0.0);
    for (std::size_t g = 0; g < B; ++g) {
      total += gsums[g][sz];
      means[g] = gsums[g][sz] / static_cast<double>(gsamples[g]);
    }
    emp.n_hat[sz - 1] = total / total_samples;
    double mbar = 0.0;
    for (double v : means) mbar += v;
    mbar /= static_cast<double>(B);
    double var = 0.0;
    for (double v : means) var += (v - mbar) * (v - mbar);
    var /= static_cast<double>(B - 1);
    emp.stderr_[sz - 1] = std::sqrt(var / static_cast<double>(B));
  }

  double dtotal = 0.0, dbar = 0.0;
  std::vector<double> dmeans(B, 0.0);
  for (std::size_t g = 0; g < B; ++g) {
    dtotal += gdensity[g];
    dmeans[g] = gdensity[g] / static_cast<double>(gsamples[g]);
    dbar += dmeans[g];
  }
  emp.density_mean = dtotal / total_samples;
  dbar /= static_cast<double>(B);
  double dvar = 0.0;
  for (double v : dmeans) dvar += (v - dbar) * (v - dbar);
  dvar /= static_cast<double>(B - 1);
  emp.density_stderr = std::sqrt(dvar / static_cast<double>(B));
  return emp;
}

}  // namespace domino::sim
