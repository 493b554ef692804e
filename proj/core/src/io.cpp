#include "domino/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace domino::io {

namespace {

void require_schema(const json& j, const char* kind) {
  if (!j.is_object() || j.value("schema", -1) != kSchemaVersion)
    throw std::runtime_error(std::string("expected a schema-") +
                             std::to_string(kSchemaVersion) + " " + kind +
                             " document");
  if (kind && j.value("kind", "") != kind)
    throw std::runtime_error(std::string("document kind is '") +
                             j.value("kind", "") + "', expected '" + kind + "'");
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json params_to_json(const ModelParams& p) {
  json j;
  j["N"] = p.lattice_size;
  j["nu"] = p.nu;
  if (const auto* c = std::get_if<ConstantMu>(&p.mu_rule)) {
    j["mu_rule"] = {{"type", "constant"}, {"mu", c->mu}};
  } else {
    const auto& ip = std::get<InversePowerMu>(p.mu_rule);
    j["mu_rule"] = {{"type", "inverse_power"}, {"delta", ip.delta}};
    j["theta"] = ip.delta / p.nu;
  }
  j["seed"] = p.seed;
  return j;
}

ModelParams params_from_json(const json& j) {
  ModelParams p;
  p.lattice_size = j.at("N").get<std::int64_t>();
  p.nu = j.at("nu").get<double>();
  const auto& rule = j.at("mu_rule");
  const std::string type = rule.at("type").get<std::string>();
  if (type == "constant")
    p.mu_rule = ConstantMu{rule.at("mu").get<double>()};
  else if (type == "inverse_power")
    p.mu_rule = InversePowerMu{rule.at("delta").get<double>()};
  else
    throw std::runtime_error("unknown mu_rule type '" + type + "'");
  p.seed = j.at("seed").get<std::uint64_t>();
  p.validate();
  return p;
}

json dist_to_json(const exact::ClusterDistribution& dist,
                  const std::optional<analysis::BalanceResiduals>& residuals) {
  json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "cluster_distribution";
  j["N"] = dist.lattice_size;
  if (dist.theta)
    j["theta"] = *dist.theta;
  else
    j["theta"] = nullptr;
  j["i_max"] = dist.i_max();
  j["derived"] = {{"rho", dist.derived.rho},
                  {"n_total", dist.derived.n_total},
                  {"n1_empty", dist.derived.n1_empty}};
  if (residuals)
    j["residuals"] = {{"balance_n", residuals->r_n},
                      {"balance_rho", residuals->r_rho}};
  else
    j["residuals"] = nullptr;
  j["n"] = dist.n;
  return j;
}

exact::ClusterDistribution dist_from_json(const json& j) {
  require_schema(j, "cluster_distribution");
  exact::ClusterDistribution dist;
  dist.lattice_size = j.at("N").get<std::int64_t>();
  if (!j.at("theta").is_null()) dist.theta = j.at("theta").get<double>();
  const auto& d = j.at("derived");
  dist.derived.rho = d.at("rho").get<double>();
  dist.derived.n_total = d.at("n_total").get<double>();
  dist.derived.n1_empty = d.at("n1_empty").get<double>();
  dist.n = j.at("n").get<std::vector<double>>();
  return dist;
}

std::string dist_to_csv(const exact::ClusterDistribution& dist) {
  std::ostringstream out;
  out << "i,n_i\n";
  for (std::size_t k = 0; k < dist.n.size(); ++k)
    out << (k + 1) << ',' << format_double(dist.n[k]) << '\n';
  return out.str();
}

json coeffs_to_json(const series::CoeffSequence& seq, std::optional<double> theta) {
  json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "coeff_sequence";
  j["mode"] = seq.mode == series::CoeffMode::Float64 ? "float64" : "exact_rational";
  if (theta)
    j["theta"] = *theta;
  else
    j["theta"] = nullptr;
  if (seq.mode == series::CoeffMode::Float64) {
    j["c"] = seq.values;
  } else {
    json arr = json::array();
    for (const auto& q : seq.exact) arr.push_back(to_string(q));
    j["c"] = std::move(arr);
  }
  return j;
}

std::string coeffs_to_csv(const series::CoeffSequence& seq) {
  std::ostringstream out;
  out << "m,c_m\n";
  for (std::size_t m = 0; m < seq.size(); ++m) {
    out << m << ',';
    if (seq.mode == series::CoeffMode::Float64)
      out << format_double(seq.values[m]);
    else
      out << to_string(seq.exact[m]);
    out << '\n';
  }
  return out.str();
}

json stats_to_json(const sim::SimStats& stats, const sim::EmpiricalDistribution& emp) {
  json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "sim_stats";
  j["params"] = params_to_json(stats.params);
  j["run"] = {{"steps", stats.steps},
              {"burn_in", stats.burn_in},
              {"sample_every", stats.sample_every},
              {"replicas", stats.replicas},
              {"samples", stats.samples},
              {"batches", emp.batches},
              {"rng", "mt19937_64/splitmix64-streams"}};
  j["density"] = {{"mean", emp.density_mean}, {"stderr", emp.density_stderr}};
  j["empty_singleton_mean"] = emp.empty_singleton_mean;
  json hist = json::array();
  for (std::size_t k = 0; k < emp.n_hat.size(); ++k) {
    if (emp.n_hat[k] == 0.0) continue;
    hist.push_back({{"i", k + 1}, {"mean", emp.n_hat[k]}, {"stderr", emp.stderr_[k]}});
  }
  j["cluster_hist"] = std::move(hist);
  json av = json::array();
  for (std::size_t s = 0; s < stats.avalanche_hist.size(); ++s)
    if (stats.avalanche_hist[s] > 0)
      av.push_back({{"size", s}, {"count", stats.avalanche_hist[s]}});
  j["avalanche_hist"] = std::move(av);
  j["density_trace"] = stats.density_trace;
  return j;
}

std::string hist_to_csv(const sim::SimStats& stats, const sim::EmpiricalDistribution& emp) {
  std::ostringstream out;
  out << "size,count,stderr\n";
  for (std::size_t k = 0; k < emp.n_hat.size(); ++k) {
    if (emp.n_hat[k] == 0.0) continue;
    out << (k + 1) << ',' << format_double(emp.n_hat[k]) << ','
        << format_double(emp.stderr_[k]) << '\n';
  }
  (void)stats;
  return out.str();
}

SimDocument sim_from_json(const json& j) {
  require_schema(j, "sim_stats");
  SimDocument doc;
  doc.params = params_from_json(j.at("params"));
  auto& emp = doc.empirical;
  emp.lattice_size = doc.params.lattice_size;
  emp.samples = j.at("run").at("samples").get<std::int64_t>();
  emp.batches = j.at("run").value("batches", 0);
  emp.density_mean = j.at("density").at("mean").get<double>();
  emp.density_stderr = j.at("density").at("stderr").get<double>();
  emp.empty_singleton_mean = j.value("empty_singleton_mean", 0.0);
  std::size_t width = 0;
  for (const auto& row : j.at("cluster_hist"))
    width = std::max(width, row.at("i").get<std::size_t>());
  emp.n_hat.assign(width, 0.0);
  emp.stderr_.assign(width, 0.0);
  for (const auto& row : j.at("cluster_hist")) {
    const auto i = row.at("i").get<std::size_t>();
    emp.n_hat[i - 1] = row.at("mean").get<double>();
    emp.stderr_[i - 1] = row.at("stderr").get<double>();
  }
  return doc;
}

json report_to_json(const analysis::ComparisonReport& rep) {
  json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "comparison_report";
  j["chi_square"] = rep.chi_square;
  j["dof"] = rep.dof;
  j["chi_square_per_dof"] = rep.dof > 0 ? rep.chi_square / static_cast<double>(rep.dof) : 0.0;
  j["balance"] = {{"balance_n", rep.balance.r_n}, {"balance_rho", rep.balance.r_rho}};
  if (rep.tail)
    j["tail_fit"] = {{"exponent", rep.tail->exponent},
                     {"half_width", rep.tail->half_width}};
  else
    j["tail_fit"] = nullptr;
  json rows = json::array();
  for (const auto& r : rep.per_i)
    rows.push_back({{"i", r.i},
                    {"n_theory", r.n_theory},
                    {"n_hat", r.n_hat},
                    {"stderr", r.stderr_},
                    {"z", r.z}});
  j["per_i"] = std::move(rows);
  return j;
}

std::string report_to_text(const analysis::ComparisonReport& rep) {
  std::ostringstream out;
  char line[160];
  out << "   i        theory     empirical        stderr         z\n";
  for (const auto& r : rep.per_i) {
    std::snprintf(line, sizeof line, "%4lld  %12.6g  %12.6g  %12.4g  %8.3f\n",
                  static_cast<long long>(r.i), r.n_theory, r.n_hat, r.stderr_, r.z);
    out << line;
  }
  std::snprintf(line, sizeof line,
                "chi_square = %.6g with dof = %lld (chi2/dof = %.4g)\n",
                rep.chi_square, static_cast<long long>(rep.dof),
                rep.dof ? rep.chi_square / static_cast<double>(rep.dof) : 0.0);
  out << line;
  std::snprintf(line, sizeof line,
                "balance residuals: r_n = %.3e, r_rho = %.3e\n", rep.balance.r_n,
                rep.balance.r_rho);
  out << line;
  if (rep.tail) {
    std::snprintf(line, sizeof line, "tail exponent (theory, included range): %.4f +/- %.4f\n",
                  rep.tail->exponent, rep.tail->half_width);
    out << line;
  }
  return out.str();
}

FileConfig config_from_json(const json& j) {
  if (!j.is_object()) throw std::runtime_error("config file must hold a JSON object");
  FileConfig c;
  if (j.contains("N")) c.N = j.at("N").get<std::int64_t>();
  if (j.contains("nu")) c.nu = j.at("nu").get<double>();
  if (j.contains("delta")) c.delta = j.at("delta").get<double>();
  if (j.contains("mu")) c.mu = j.at("mu").get<double>();
  if (j.contains("theta")) c.theta = j.at("theta").get<double>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("steps")) c.steps = j.at("steps").get<std::int64_t>();
  if (j.contains("burn_in")) c.burn_in = j.at("burn_in").get<std::int64_t>();
  if (j.contains("sample_every")) c.sample_every = j.at("sample_every").get<std::int64_t>();
  if (j.contains("replicas")) c.replicas = j.at("replicas").get<int>();
  if (j.contains("i_max")) c.i_max = j.at("i_max").get<std::int64_t>();
  return c;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("parse error in " + path.string() + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace domino::io
