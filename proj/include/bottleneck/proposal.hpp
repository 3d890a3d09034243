#pragma once

#include <cstdint>
#include <vector>

#include "bottleneck/accounting.hpp"
#include "bottleneck/instance.hpp"
#include "bottleneck/json_io.hpp"

namespace bottleneck {

struct Metrics {
  /// Tardiness of the target in the original schedule minus its tardiness in the proposal.
  int delta_tardiness = 0;
  /// Sum over jobs of |C_j - C*_j|.
  std::int64_t delta_s = 0;
  friend bool operator==(const Metrics&, const Metrics&) = default;
};

Metrics compute_metrics(const Instance& original, const Schedule& original_schedule, const Schedule& proposal_schedule,
                        JobId target);

/// Outcome of one relaxation step, expressed against the original instance.
struct RelaxationProposal {
  int iteration = 0;  // 0 = no relaxation applied
  /// Original capacities with `changes` applied; `schedule` is feasible for it.
  Instance instance;
  Schedule schedule;
  CapacityChanges changes;
  Metrics metrics;
};

struct RelaxationRun {
  std::vector<RelaxationProposal> iterations;
  RelaxationProposal final_proposal;
};

/// Proposal that changes nothing.
RelaxationProposal identity_proposal(const Instance& original, const Schedule& schedule);

/// Reduces the working instance against the original for `schedule`,
/// extracts additions/migrations and evaluates the metrics.
RelaxationProposal account_iteration(const Instance& original, const Schedule& original_schedule,
                                     const Instance& working, const Schedule& schedule, JobId target, int iteration);

/// Project with the largest weighted tardiness (ties: lowest id).
JobId default_target(const Instance& inst, const Schedule& schedule);

Json changes_to_json(const CapacityChanges& changes);
CapacityChanges changes_from_json(const Json& doc);

/// {iteration, instance, schedule, additions, migrations, metrics}
Json proposal_to_json(const RelaxationProposal& proposal);
RelaxationProposal proposal_from_json(const Json& doc);

}  // namespace bottleneck
