#pragma once

#include "domino/analysis.hpp"
#include "domino/exact.hpp"
#include "domino/series.hpp"
#include "domino/sim.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace domino::io {

using json = nlohmann::ordered_json;

/// Every emitted document carries this top-level schema version.
inline constexpr int kSchemaVersion = 1;

// Doubles written to JSON use the library's shortest round-trip form (at most
// 17 significant digits); CSV uses %.17g. Re-parsing either reproduces the
// exact bit pattern.
std::string format_double(double v);

json params_to_json(const ModelParams& p);
ModelParams params_from_json(const json& j);

json dist_to_json(const exact::ClusterDistribution& dist,
                  const std::optional<analysis::BalanceResiduals>& residuals);
exact::ClusterDistribution dist_from_json(const json& j);
std::string dist_to_csv(const exact::ClusterDistribution& dist);

json coeffs_to_json(const series::CoeffSequence& seq, std::optional<double> theta);
std::string coeffs_to_csv(const series::CoeffSequence& seq);

json stats_to_json(const sim::SimStats& stats, const sim::EmpiricalDistribution& emp);
std::string hist_to_csv(const sim::SimStats& stats, const sim::EmpiricalDistribution& emp);

/// The portions of a simulation document that the compare pipeline consumes.
struct SimDocument {
  ModelParams params;
  sim::EmpiricalDistribution empirical;
};
SimDocument sim_from_json(const json& j);

json report_to_json(const analysis::ComparisonReport& rep);
std::string report_to_text(const analysis::ComparisonReport& rep);

/// Optional fields of a JSON config file; command line flags override these.
struct FileConfig {
  std::optional<std::int64_t> N;
  std::optional<double> nu;
  std::optional<double> delta;
  std::optional<double> mu;
  std::optional<double> theta;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> steps;
  std::optional<std::int64_t> burn_in;
  std::optional<std::int64_t> sample_every;
  std::optional<int> replicas;
  std::optional<std::int64_t> i_max;
};
FileConfig config_from_json(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace domino::io
