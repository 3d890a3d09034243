#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bottleneck/iira.hpp"
#include "bottleneck/json_io.hpp"
#include "bottleneck/ssira.hpp"

namespace bottleneck {

enum class Algorithm { iira, ssira };
std::string algorithm_name(Algorithm algorithm);  // "IIRA" / "SSIRA"
Algorithm parse_algorithm(const std::string& name);

/// {indicator, kernel, granularity, improvement_periods, iterations, capacity_step};
/// missing fields keep their defaults. Throws std::invalid_argument.
Json iira_params_to_json(const IiraParams& params);
IiraParams iira_params_from_json(const Json& doc);
/// {key, interval_limit, iterations}
Json ssira_params_to_json(const SsiraParams& params);
SsiraParams ssira_params_from_json(const Json& doc);

/// Parameter combinations for both algorithms plus the solver budget.
struct GridConfig {
  std::vector<IiraParams> iira;
  std::vector<SsiraParams> ssira;
  SolveLimits limits{.time_limit = 10.0, .node_limit = 0, .restarts = 8, .seed = 0};

  /// 2 indicators x 6 kernels x G{1,4,8} x P{1,3} x I{1,3} x step{1,2} = 288;
  /// 2 keys x IT{1,2,4} x I{1..6} = 36.
  static GridConfig full();
  /// 2 indicators x {uniform1, triangular2} x G{1,4,8} x step{1,2} with P=3, I=2 (24);
  /// 2 keys x IT{1,2,4} x I{1,3} (12).
  static GridConfig reduced();
};

/// {"iira": {indicators, kernels, granularities, improvement_periods, iterations,
///  capacity_steps}, "ssira": {keys, interval_limits, iterations},
///  "solver": {time_limit, restarts}}; products are expanded in that order,
/// the last axis varying fastest. Missing sections leave the full defaults.
GridConfig grid_from_json(const Json& doc);
Json grid_to_json_template(const std::string& which);  // "full" or "reduced"

struct NamedInstance {
  std::string name;
  Instance instance;
};

/// Every *.json instance in `dir`, sorted by file name.
std::vector<NamedInstance> load_instance_dir(const std::filesystem::path& dir);

struct EvaluationRecord {
  std::string instance;
  Algorithm algorithm = Algorithm::iira;
  int combo = 0;
  std::string params;
  std::string key;  // indicator for IIRA, sort key for SSIRA
  JobId target = 0;
  int baseline_tardiness = 0;
  int delta_tardiness = 0;
  std::int64_t delta_s = 0;
  int iterations = 0;
  double wall_seconds = 0;
  std::string error;  // empty on success
};

struct EvaluationOptions {
  bool run_iira = true;
  bool run_ssira = true;
  int jobs = 1;
  std::optional<std::uint64_t> seed;  // overrides the grid's solver seed
  /// Sees every iteration's proposal together with its original instance and
  /// baseline; called from worker threads.
  std::function<void(const Instance&, const Schedule&, const RelaxationProposal&)> on_proposal;
};

/// Baseline solve and default target per instance, then every combination of
/// the selected algorithms. Records come back sorted by instance, algorithm,
/// combination regardless of `jobs`.
std::vector<EvaluationRecord> run_grid(const std::vector<NamedInstance>& instances, const GridConfig& grid,
                                       const EvaluationOptions& options);

struct AlgorithmSummary {
  int improving = 0;
  int unique = 0;
  int best = 0;
};

struct Summary {
  int instances = 0;
  AlgorithmSummary iira;
  AlgorithmSummary ssira;
};

/// Best combination per instance and algorithm: largest Δtardiness, then
/// smallest ΔS, then lowest combination index. nullopt if every run failed.
std::optional<EvaluationRecord> best_record(const std::vector<EvaluationRecord>& records, const std::string& instance,
                                            Algorithm algorithm);

/// Improving: best Δtardiness > 0. Unique: improves and the other does not.
/// Best: improves with a Δtardiness at least the other's (ties credit both).
Summary summarize(const std::vector<EvaluationRecord>& records);

std::string records_csv(const std::vector<EvaluationRecord>& records);
std::string timings_csv(const std::vector<EvaluationRecord>& records);
/// One row per instance, algorithm and key: the best combination's ΔS and Δtardiness.
std::string plotdata_csv(const std::vector<EvaluationRecord>& records);
std::string summary_text(const Summary& summary);

/// records.csv, summary.txt, plotdata.csv (byte-reproducible) and timings.csv.
void write_outputs(const std::vector<EvaluationRecord>& records, const std::filesystem::path& out_dir);

}  // namespace bottleneck
