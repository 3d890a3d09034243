#pragma once

#include <string>
#include <vector>

#include "bottleneck/proposal.hpp"
#include "bottleneck/solver.hpp"

namespace bottleneck {

enum class SortKey {
  start,        // ascending interval start, ties by job id
  start_shift,  // ascending S_j - s, ties by job id
};

std::string sort_key_name(SortKey key);  // "Kt" / "KdS"
SortKey parse_sort_key(const std::string& name);

struct SsiraParams {
  int iterations = 1;
  int interval_limit = 1;
  SortKey key = SortKey::start;

  void check() const;
  std::string describe() const;
};

/// Earlier placement of `job` over [start, end), end = start + d_job.
struct ImprovementInterval {
  JobId job = 0;
  int start = 0;
  int end = 0;
  friend bool operator==(const ImprovementInterval&, const ImprovementInterval&) = default;
};

/// Jobs starting at or before t keep their start; later jobs move to their
/// precedence-only earliest start given the relaxed predecessors.
Schedule suffix_relaxed_schedule(const Instance& inst, const Schedule& schedule, int t);

/// Times at which the suffix-relaxed schedule can change: 0 and every start.
std::vector<int> suffix_breakpoints(const Schedule& schedule);

/// Least job set containing `job` and closed under: precedence predecessors
/// ending at the job's start; jobs sharing a required resource ending at the
/// job's start; and, when the job starts exactly at the start of an
/// availability interval of a required resource in `availability`, the
/// jobs using that resource that end with the previous availability interval.
/// Returned in ascending id order.
std::vector<JobId> left_shift_closure(const Instance& inst, const Schedule& schedule, JobId job,
                                      const Instance& availability);
inline std::vector<JobId> left_shift_closure(const Instance& inst, const Schedule& schedule, JobId job) {
  return left_shift_closure(inst, schedule, job, inst);
}

/// Maximal runs of positive capacity of resource k within [0, T), half-open.
std::vector<std::pair<int, int>> availability_intervals(const Instance& inst, ResourceId k);

/// Earliest relaxed start below the current start for every job in the
/// target's closure, ordered by `key`, truncated to `limit`.
std::vector<ImprovementInterval> find_intervals_to_relax(const Instance& inst, const Schedule& schedule, int limit,
                                                         SortKey key, JobId target, const Instance& availability);
inline std::vector<ImprovementInterval> find_intervals_to_relax(const Instance& inst, const Schedule& schedule,
                                                                int limit, SortKey key, JobId target) {
  return find_intervals_to_relax(inst, schedule, limit, key, target, inst);
}

/// Targeted relaxation: raises every resource a selected job needs by its
/// consumption over the interval, re-solves warm-started, and accounts the
/// consumed changes. Stops early when no interval is found.
RelaxationRun run_ssira(const Instance& inst, const Schedule& initial, const SsiraParams& params, JobId target,
                        const SolveLimits& limits = {});

}  // namespace bottleneck
