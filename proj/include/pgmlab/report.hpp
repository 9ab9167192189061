#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "pgmlab/analysis.hpp"
#include "pgmlab/groups.hpp"
#include "pgmlab/pgm.hpp"

namespace pgmlab {

inline constexpr int kReportSchemaVersion = 1;

struct RunOptions {
  std::string group_spec;
  std::string subgroup_spec;
  int registers = 1;
  std::optional<double> tol;  ///< defaults to default_optimality_tolerance
  std::size_t max_dim = kDefaultMaxDim;
  std::uint64_t seed = 20240601;
  bool uniform_guess = false;  ///< replace the PGM by 1/l guessing (negative control)
};

struct NamedCheck {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double limit = 0.0;
};

struct ExperimentReport {
  RunOptions options;
  std::size_t group_order = 0;
  std::size_t subgroup_order = 0;
  std::size_t conjugates = 0;
  std::size_t normalizer_order = 0;
  std::size_t core_order = 0;
  std::size_t dim = 0;
  bool gelfand = false;

  double p_success_measured = 0.0;
  std::optional<double> p_success_predicted;  ///< single-register formula (k = 1)
  double core_bound = 0.0;
  std::vector<MultiregisterBound> multiregister_bounds;  ///< k = 1..registers
  double planch_SH = 0.0;
  PlanchSource planch_source = PlanchSource::RankOfMixture;
  std::optional<double> planch_irrep;

  OptimalityReport optimality;
  bool optimality_claimed = false;  ///< k = 1, or a Gel'fand pair
  double completeness = 0.0;
  CapacityReport capacity;
  double power_mean_min_gap = 0.0;

  std::vector<NamedCheck> checks;
  double duration_ms = 0.0;

  bool pass() const;
};

ExperimentReport run_experiment(const RunOptions& options);

nlohmann::json to_json(const ExperimentReport& r, bool include_duration = true);

/// Prediction-only report; no density matrices beyond the rank path.
nlohmann::json prediction_json(const std::string& group_spec, const std::string& subgroup_spec,
                               int registers, std::size_t max_dim);

std::string csv_header();
std::string to_csv_row(const ExperimentReport& r);

}  // namespace pgmlab
