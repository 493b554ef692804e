// domino: stationary-state theory and Monte Carlo for the random domino
// automaton on a ring.
//
// Subcommands:
//   motzkin    coefficient sequence of the quadratic recurrence (exact
//              integers at theta = 0, binary64 otherwise)
//   solve      stationary cluster distribution of the inverse-power case
//   simulate   seeded Monte Carlo run, optionally replicated in parallel
//   compare    theory-vs-simulation report from two prior output files
//   asym       limit-form tail values and their power-law exponent
//
// Exit codes: 0 success, 1 runtime/convergence failure, 2 usage error.

#include "domino/analysis.hpp"
#include "domino/exact.hpp"
#include "domino/io.hpp"
#include "domino/params.hpp"
#include "domino/series.hpp"
#include "domino/sim.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using domino::io::json;

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty())
    std::cout << text;
  else
    domino::io::write_text_file(output_path, text);
}

void emit_json(const json& j, const std::string& output_path) {
  emit(j.dump(2) + "\n", output_path);
}

int thread_cap() {
  if (const char* env = std::getenv("DOMINO_LAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;  // hardware concurrency
}

struct MotzkinArgs {
  std::int64_t m_max = 10;
  std::optional<double> theta;
  std::string mode = "auto";
  std::string format = "csv";
  std::string output;
};

int cmd_motzkin(const MotzkinArgs& a) {
  const bool exact =
      a.mode == "exact" || (a.mode == "auto" && (!a.theta || *a.theta == 0.0));
  domino::series::CoeffSequence seq;
  if (exact) {
    const domino::BigRat t = a.theta ? domino::BigRat(*a.theta) : domino::BigRat(0);
    const auto c0 = domino::series::c_initial_exact(t);
    seq = domino::series::run_recurrence_exact(c0, c0,
                                               static_cast<std::size_t>(a.m_max));
  } else {
    const double c0 = domino::series::c_initial(a.theta.value_or(0.0));
    seq = domino::series::run_recurrence(c0, c0, static_cast<std::size_t>(a.m_max));
  }
  if (a.format == "json")
    emit_json(domino::io::coeffs_to_json(seq, a.theta), a.output);
  else
    emit(domino::io::coeffs_to_csv(seq), a.output);
  return 0;
}

struct SolveArgs {
  std::optional<double> theta;
  std::optional<std::int64_t> N;
  std::optional<std::int64_t> i_max;
  std::string config;
  std::string format = "csv";
  std::string output;
};

int cmd_solve(const SolveArgs& a) {
  double theta = 0.0;
  std::int64_t N = 0;
  std::optional<std::int64_t> i_max = a.i_max;
  if (!a.config.empty()) {
    const auto c = domino::io::config_from_json(domino::io::read_json_file(a.config));
    if (c.theta) theta = *c.theta;
    if (c.N) N = *c.N;
    if (c.i_max && !i_max) i_max = c.i_max;
  }
  if (a.theta) theta = *a.theta;
  if (a.N) N = *a.N;
  if (theta == 0.0 && !a.theta)
    throw CLI::ValidationError("solve", "--theta is required (directly or via --config)");

  const domino::InversePowerCase c{theta, N};
  c.validate();
  const std::int64_t order = i_max ? *i_max : domino::exact::adaptive_i_max(c);
  const auto dist = domino::exact::solve_inverse_power(c, order);
  // any nu with delta = nu*theta represents the same stationary algebra
  domino::ModelParams params{N, 1.0, domino::InversePowerMu{theta}, 0};
  const auto residuals = domino::analysis::balance_residuals(dist, params);
  if (a.format == "json")
    emit_json(domino::io::dist_to_json(dist, residuals), a.output);
  else
    emit(domino::io::dist_to_csv(dist), a.output);
  return 0;
}

struct SimulateArgs {
  std::optional<std::int64_t> N;
  std::optional<double> nu;
  std::optional<double> delta;
  std::optional<double> mu;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> steps;
  std::optional<std::int64_t> burn_in;
  std::optional<std::int64_t> sample_every;
  std::optional<int> replicas;
  std::string config;
  std::string format = "json";
  std::string output;
};

int cmd_simulate(const SimulateArgs& a) {
  domino::io::FileConfig c;
  if (!a.config.empty())
    c = domino::io::config_from_json(domino::io::read_json_file(a.config));
  auto pick = [](auto flag, auto file, auto fallback) {
    return flag ? *flag : (file ? *file : fallback);
  };

  domino::ModelParams params;
  params.lattice_size = pick(a.N, c.N, std::int64_t{0});
  params.nu = pick(a.nu, c.nu, 0.0);
  params.seed = pick(a.seed, c.seed, std::uint64_t{1});
  const std::optional<double> delta = a.delta ? a.delta : c.delta;
  const std::optional<double> mu = a.mu ? a.mu : c.mu;
  if (delta && mu)
    throw CLI::ValidationError("simulate", "--delta and --mu are mutually exclusive");
  if (!delta && !mu)
    throw CLI::ValidationError("simulate", "one of --delta or --mu is required");
  if (delta) {
    params.mu_rule = domino::InversePowerMu{*delta};
    if (*delta > 1.0)
      std::cerr << "warning: delta > 1; mu_i is clamped to 1 for small clusters, "
                   "so the simulation leaves the regime described by the "
                   "unclamped theory\n";
  } else {
    params.mu_rule = domino::ConstantMu{*mu};
  }
  params.validate();

  const std::int64_t steps = pick(a.steps, c.steps, std::int64_t{10000000});
  const std::int64_t burn_in =
      pick(a.burn_in, c.burn_in, domino::sim::default_burn_in(params));
  const std::int64_t every = pick(a.sample_every, c.sample_every,
                                  domino::sim::default_sample_every(params.lattice_size));
  const int replicas = pick(a.replicas, c.replicas, 1);

  const auto stats = domino::sim::run_ensemble(params, steps, burn_in, every,
                                               replicas, thread_cap());
  const auto emp = domino::sim::measure(stats);
  if (a.format == "csv")
    emit(domino::io::hist_to_csv(stats, emp), a.output);
  else
    emit_json(domino::io::stats_to_json(stats, emp), a.output);
  return 0;
}

struct CompareArgs {
  std::string theory_path;
  std::string sim_path;
  std::string format = "text";
  std::string output;
};

int cmd_compare(const CompareArgs& a) {
  const auto theory =
      domino::io::dist_from_json(domino::io::read_json_file(a.theory_path));
  const auto simdoc =
      domino::io::sim_from_json(domino::io::read_json_file(a.sim_path));
  const auto report =
      domino::analysis::compare(theory, simdoc.empirical, simdoc.params);
  if (a.format == "json")
    emit_json(domino::io::report_to_json(report), a.output);
  else
    emit(domino::io::report_to_text(report), a.output);
  return 0;
}

struct AsymArgs {
  std::int64_t i_from = 50;
  std::int64_t i_to = 200;
  double n_theta = 1.0;
  std::string source = "exact";
  std::string format = "text";
  std::string output;
};

int cmd_asym(const AsymArgs& a) {
  if (a.i_from < 2 || a.i_to <= a.i_from)
    throw CLI::ValidationError("asym", "need 2 <= --i-from < --i-to");
  using domino::series::MotzkinSource;
  const MotzkinSource src = a.source == "asymptotic" ? MotzkinSource::Asymptotic
                            : a.source == "auto"     ? MotzkinSource::Auto
                                                     : MotzkinSource::Exact;
  // values n_1..n_{i_to+1}; indices below i_from only pad the vector
  std::vector<double> n(static_cast<std::size_t>(a.i_to) + 1, 0.0);
  for (std::int64_t i = std::max<std::int64_t>(2, a.i_from);
       i <= a.i_to + 1; ++i)
    n[static_cast<std::size_t>(i - 1)] = domino::series::asymptotic_ni(i, a.n_theta, src);
  const auto fit = domino::analysis::fit_tail_exponent(n, a.i_from, a.i_to);

  if (a.format == "json") {
    json j;
    j["schema"] = domino::io::kSchemaVersion;
    j["kind"] = "tail_fit";
    j["i_from"] = a.i_from;
    j["i_to"] = a.i_to;
    j["n_theta"] = a.n_theta;
    j["source"] = a.source;
    j["exponent"] = fit.exponent;
    j["half_width"] = fit.half_width;
    emit_json(j, a.output);
  } else if (a.format == "csv") {
    std::ostringstream out;
    out << "i,n_i\n";
    for (std::int64_t i = a.i_from; i <= a.i_to + 1; ++i)
      out << i << ',' << domino::io::format_double(n[static_cast<std::size_t>(i - 1)])
          << '\n';
    emit(out.str(), a.output);
  } else {
    char line[120];
    std::snprintf(line, sizeof line, "exponent %.4f +/- %.4f (i in [%lld, %lld])\n",
                  fit.exponent, fit.half_width, static_cast<long long>(a.i_from),
                  static_cast<long long>(a.i_to));
    emit(line, a.output);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random domino automaton toolkit"};
  app.require_subcommand(1);

  MotzkinArgs mo;
  auto* motzkin = app.add_subcommand("motzkin", "coefficient sequence of the recurrence");
  motzkin->add_option("--m-max", mo.m_max, "largest index m")->check(CLI::NonNegativeNumber);
  motzkin->add_option("--theta", mo.theta, "theta parameter (omitted: theta = 0, exact Motzkin numbers)");
  motzkin->add_option("--mode", mo.mode, "exact | float | auto")
      ->check(CLI::IsMember({"exact", "float", "auto"}));
  motzkin->add_option("--format", mo.format)->check(CLI::IsMember({"csv", "json"}));
  motzkin->add_option("-o,--output", mo.output, "output file (default stdout)");

  SolveArgs so;
  auto* solve = app.add_subcommand("solve", "inverse-power stationary distribution");
  solve->add_option("--theta", so.theta, "theta = delta/nu (> 0)");
  solve->add_option("--n", so.N, "lattice size N");
  solve->add_option("--i-max", so.i_max, "truncation order (default: adaptive)");
  solve->add_option("--config", so.config, "JSON config file");
  solve->add_option("--format", so.format)->check(CLI::IsMember({"csv", "json"}));
  solve->add_option("-o,--output", so.output);

  SimulateArgs si;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run");
  simulate->add_option("--n", si.N, "lattice size N");
  simulate->add_option("--nu", si.nu, "deposition probability");
  simulate->add_option("--delta", si.delta, "inverse-power rule mu_i = delta/i");
  simulate->add_option("--mu", si.mu, "constant rule mu_i = mu");
  simulate->add_option("--seed", si.seed, "RNG seed (default 1)");
  simulate->add_option("--steps", si.steps, "total steps (default 1e7)");
  simulate->add_option("--burn-in", si.burn_in, "discarded steps (default 10 N / nu)");
  simulate->add_option("--sample-every", si.sample_every, "sampling stride (default N/10)");
  simulate->add_option("--replicas", si.replicas, "independent replicas run in parallel");
  simulate->add_option("--config", si.config, "JSON config file");
  simulate->add_option("--format", si.format)->check(CLI::IsMember({"csv", "json"}));
  simulate->add_option("-o,--output", si.output);

  CompareArgs co;
  auto* compare = app.add_subcommand("compare", "theory vs simulation report");
  compare->add_option("--theory", co.theory_path, "solve output (json)")->required();
  compare->add_option("--sim", co.sim_path, "simulate output (json)")->required();
  compare->add_option("--format", co.format)->check(CLI::IsMember({"text", "json"}));
  compare->add_option("-o,--output", co.output);

  AsymArgs as;
  auto* asym = app.add_subcommand("asym", "limit-form tail exponent");
  asym->add_option("--i-from", as.i_from, "first cluster size of the fit")->required();
  asym->add_option("--i-to", as.i_to, "last cluster size of the fit")->required();
  asym->add_option("--n-theta", as.n_theta, "N*theta prefactor (default 1)");
  asym->add_option("--source", as.source, "exact | asymptotic | auto")
      ->check(CLI::IsMember({"exact", "asymptotic", "auto"}));
  asym->add_option("--format", as.format)->check(CLI::IsMember({"text", "csv", "json"}));
  asym->add_option("-o,--output", as.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*motzkin) return cmd_motzkin(mo);
    if (*solve) return cmd_solve(so);
    if (*simulate) return cmd_simulate(si);
    if (*compare) return cmd_compare(co);
    if (*asym) return cmd_asym(as);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
