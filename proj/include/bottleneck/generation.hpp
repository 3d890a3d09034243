#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bottleneck/instance.hpp"
#include "bottleneck/psplib.hpp"
#include "bottleneck/solver.hpp"

namespace bottleneck {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Working shift of a resource: 8h = hours [6,14), 16h = [6,22), 24h = always.
enum class Shift { h8, h16, h24 };

std::string shift_name(Shift shift);  // "8h", "16h", "24h"
Shift parse_shift(const std::string& name);
std::array<int, kCapacityPeriod> shift_pattern(Shift shift, int capacity);

/// How one raw network becomes an instance.
struct ModificationConfig {
  double alpha = 1.0;         // due-date tightness; due = round(alpha * critical path)
  std::vector<Shift> shifts;  // one per resource; missing entries default to 24h
  std::uint64_t seed = 0;     // drives project weights
  int max_weight = 3;         // weights drawn uniformly from 1..max_weight
  SolveLimits limits{.time_limit = 2.0, .node_limit = 0, .restarts = 4, .seed = 0};
};

/// Longest duration-weighted path ending at each project root (root included),
/// indexed by id - 1; zero for non-roots.
std::vector<int> project_critical_paths(const Instance& inst);

/// T = 24 * ceil((sum of durations + largest due date) / 24).
int default_horizon(const Instance& inst);

/// In-forest reduction, due dates, shift capacities and, while the heuristic
/// finds no schedule, halving durations (ceiling) and then decrementing
/// consumptions towards 1. Throws GenerationError if nothing helps.
Instance apply_modifications(const RawNetwork& network, const ModificationConfig& config);

enum class ShiftMix { all_24h, mixed };

/// One benchmark group: which source networks, due-date tightness, shifts.
struct GroupRecipe {
  std::string family;  // subdirectory of the source directory holding .sm files
  double alpha = 1.0;
  ShiftMix shifts = ShiftMix::all_24h;
};

struct BenchmarkConfig {
  std::filesystem::path source_dir;
  std::uint64_t seed = 1;
  int instances_per_group = 5;
  std::vector<GroupRecipe> groups = default_groups();
  std::optional<double> alpha_override;
  std::optional<ShiftMix> shift_override;

  /// 2 network families x alpha {0.8, 1.0} x {all 24h, mixed 8/16/24h}.
  static std::vector<GroupRecipe> default_groups();
};

struct GeneratedInstance {
  std::string name;  // g<group>_i<index>
  std::string source;  // network file name
  double alpha = 1.0;
  std::string shifts;  // e.g. "24h/8h/16h/24h"
  Instance instance;
};

/// Deterministic for a fixed configuration.
std::vector<GeneratedInstance> generate_benchmark(const BenchmarkConfig& config);

/// Writes <name>.json per instance plus manifest.csv; returns written paths.
std::vector<std::filesystem::path> write_benchmark(const std::vector<GeneratedInstance>& instances,
                                                   const std::filesystem::path& out_dir);

}  // namespace bottleneck
