#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bottleneck {

/// Capacities repeat with this period (one working day of hourly periods).
inline constexpr int kCapacityPeriod = 24;

/// Job identifiers are dense and 1-based; resource identifiers likewise.
using JobId = int;
using ResourceId = int;

struct Job {
  JobId id = 0;
  int duration = 1;
  /// Empty for non-project jobs (due date +infinity).
  std::optional<int> due_date;
  std::int64_t weight = 0;
  /// Per-period consumption indexed by resource position (id - 1).
  std::vector<int> consumption;

  int consumes(ResourceId k) const {
    const auto i = static_cast<std::size_t>(k - 1);
    return i < consumption.size() ? consumption[i] : 0;
  }
};

/// Renewable resource with a daily base pattern plus sparse capacity edits.
struct Resource {
  ResourceId id = 0;
  std::array<int, kCapacityPeriod> base_pattern{};
  /// time period -> signed capacity delta; zero deltas are never stored.
  std::map<int, int> overlay;

  int capacity(int t) const {
    const int base = base_pattern[static_cast<std::size_t>(t % kCapacityPeriod)];
    const auto it = overlay.find(t);
    return it == overlay.end() ? base : base + it->second;
  }

  void adjust(int t, int delta) {
    if (delta == 0) return;
    const int value = (overlay[t] += delta);
    if (value == 0) overlay.erase(t);
  }
};

struct Instance {
  std::vector<Job> jobs;
  std::vector<std::pair<JobId, JobId>> precedences;
  std::vector<Resource> resources;
  int horizon = 0;

  int job_count() const { return static_cast<int>(jobs.size()); }
  int resource_count() const { return static_cast<int>(resources.size()); }
  const Job& job(JobId j) const { return jobs[static_cast<std::size_t>(j - 1)]; }
  Job& job(JobId j) { return jobs[static_cast<std::size_t>(j - 1)]; }
  const Resource& resource(ResourceId k) const { return resources[static_cast<std::size_t>(k - 1)]; }
  Resource& resource(ResourceId k) { return resources[static_cast<std::size_t>(k - 1)]; }
  int capacity(ResourceId k, int t) const { return resource(k).capacity(t); }
};

struct Schedule {
  /// Start period of job id j at index j - 1.
  std::vector<int> starts;

  int start(JobId j) const { return starts[static_cast<std::size_t>(j - 1)]; }
  friend bool operator==(const Schedule&, const Schedule&) = default;
};

inline int completion(const Instance& inst, const Schedule& s, JobId j) {
  return s.start(j) + inst.job(j).duration;
}

/// Thrown when an instance breaks a structural invariant.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adjacency views of the precedence in-forest.
struct PrecedenceGraph {
  std::vector<std::vector<JobId>> predecessors;  // indexed by id - 1
  std::vector<JobId> successor;                  // 0 when the job is a project root
  std::vector<JobId> topological_order;          // predecessors first, ties by lowest id

  const std::vector<JobId>& preds(JobId j) const { return predecessors[static_cast<std::size_t>(j - 1)]; }
  JobId succ(JobId j) const { return successor[static_cast<std::size_t>(j - 1)]; }
  bool is_root(JobId j) const { return succ(j) == 0; }
  /// Root of the in-tree containing j.
  JobId project_of(JobId j) const;
};

/// Builds the graph; throws InstanceError on a cycle, a dangling edge, or
/// a job with more than one successor.
PrecedenceGraph precedence_graph(const Instance& inst);

/// Project roots in ascending id order.
std::vector<JobId> projects(const Instance& inst);

/// Throws InstanceError listing every broken structural invariant.
void validate_structure(const Instance& inst);

enum class ViolationKind { precedence, capacity, horizon, negative_start };

struct Violation {
  ViolationKind kind;
  JobId job = 0;        // offending job (successor for precedence)
  JobId other = 0;      // predecessor for precedence violations
  ResourceId resource = 0;
  int time = 0;
  int load = 0;
  int capacity = 0;

  std::string describe() const;
};

struct FeasibilityReport {
  std::vector<Violation> violations;
  bool feasible() const { return violations.empty(); }
};

/// Checks precedences, capacities and the horizon. Jobs occupy [S_j, S_j + d_j).
FeasibilityReport validate(const Instance& inst, const Schedule& schedule);

struct TardinessSummary {
  std::int64_t total = 0;
  std::map<JobId, std::int64_t> per_project;
};

/// Unweighted tardiness max(0, C_j - due_j); zero for jobs without a due date.
int tardiness(const Instance& inst, const Schedule& schedule, JobId j);

TardinessSummary weighted_tardiness(const Instance& inst, const Schedule& schedule);
std::int64_t objective(const Instance& inst, const Schedule& schedule);

/// Total load of resource k at every t in [0, T).
std::vector<int> consumption_timeline(const Instance& inst, const Schedule& schedule, ResourceId k);

/// Capacity of resource k at every t in [0, T).
std::vector<int> capacity_timeline(const Instance& inst, ResourceId k);

int makespan(const Instance& inst, const Schedule& schedule);

/// Resource whose capacity is `value` in every period.
Resource constant_resource(ResourceId id, int value);

}  // namespace bottleneck
