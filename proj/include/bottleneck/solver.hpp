#pragma once

#include <cstdint>
#include <optional>

#include "bottleneck/instance.hpp"

namespace bottleneck {

struct SolveLimits {
  /// Wall-clock safety cap in seconds. Results are only guaranteed
  /// reproducible when the restart/node limits bind first.
  double time_limit = 10.0;
  std::int64_t node_limit = 20'000'000;
  int restarts = 24;
  std::uint64_t seed = 0;
};

/// Largest instance the exact search accepts.
inline constexpr int kExactJobLimit = 14;

struct ExactResult {
  bool found = false;    // a feasible schedule exists in the incumbent
  bool optimal = false;  // false when a limit stopped the search
  Schedule schedule;
  std::int64_t objective = 0;
  std::int64_t nodes = 0;
};

/// Depth-first search over jobs in non-decreasing start order, with starts
/// restricted to event points and a weighted-tardiness lower bound.
/// Throws std::invalid_argument above kExactJobLimit jobs.
ExactResult solve_exact(const Instance& inst, const SolveLimits& limits = {});

struct SolveResult {
  bool feasible = false;
  Schedule schedule;
  std::int64_t objective = 0;
};

/// Serial schedule-generation over priority lists with forward-backward
/// justification and list-swap descent. Deterministic for a fixed seed.
/// `warm_start` must be feasible for `inst` (throws std::logic_error otherwise);
/// the result is never worse than it.
SolveResult solve_heuristic(const Instance& inst, const SolveLimits& limits = {},
                            const std::optional<Schedule>& warm_start = std::nullopt);

/// Serial SGS for one precedence-feasible job list; nullopt if some job
/// does not fit within the horizon.
std::optional<Schedule> serial_sgs(const Instance& inst, const std::vector<JobId>& order);

}  // namespace bottleneck
