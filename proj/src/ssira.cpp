#include "bottleneck/ssira.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bottleneck {

std::string sort_key_name(SortKey key) { return key == SortKey::start ? "Kt" : "KdS"; }

SortKey parse_sort_key(const std::string& name) {
  if (name == "Kt" || name == "kt" || name == "t") return SortKey::start;
  if (name == "KdS" || name == "kds" || name == "dS" || name == "ds") return SortKey::start_shift;
  throw std::invalid_argument("unknown sort key '" + name + "' (expected Kt or KdS)");
}

void SsiraParams::check() const {
  if (iterations < 1) throw std::invalid_argument("iterations limit must be >= 1");
  if (interval_limit < 1) throw std::invalid_argument("improvement intervals limit must be >= 1");
}

std::string SsiraParams::describe() const {
  std::ostringstream os;
  os << "K=" << sort_key_name(key) << " IT=" << interval_limit << " It=" << iterations;
  return os.str();
}

Schedule suffix_relaxed_schedule(const Instance& inst, const Schedule& schedule, int t) {
  const auto graph = precedence_graph(inst);
  Schedule relaxed = schedule;
  for (JobId j : graph.topological_order) {
    if (schedule.start(j) <= t) continue;
    int start = 0;
    for (JobId i : graph.preds(j)) start = std::max(start, relaxed.start(i) + inst.job(i).duration);
    relaxed.starts[static_cast<std::size_t>(j - 1)] = start;
  }
  return relaxed;
}

std::vector<int> suffix_breakpoints(const Schedule& schedule) {
  std::vector<int> points(schedule.starts);
  points.push_back(0);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

std::vector<std::pair<int, int>> availability_intervals(const Instance& inst, ResourceId k) {
  std::vector<std::pair<int, int>> out;
  int t = 0;
  while (t < inst.horizon) {
    if (inst.capacity(k, t) <= 0) {
      ++t;
      continue;
    }
    const int start = t;
    while (t < inst.horizon && inst.capacity(k, t) > 0) ++t;
    out.emplace_back(start, t);
  }
  return out;
}

std::vector<JobId> left_shift_closure(const Instance& inst, const Schedule& schedule, JobId job,
                                      const Instance& availability) {
  const auto graph = precedence_graph(inst);
  const int m = inst.resource_count();
  std::vector<std::vector<std::pair<int, int>>> intervals(static_cast<std::size_t>(m));
  for (ResourceId k = 1; k <= m; ++k) intervals[static_cast<std::size_t>(k - 1)] = availability_intervals(availability, k);

  const auto shares_resource = [&](JobId a, JobId b) {
    for (ResourceId k = 1; k <= m; ++k) {
      if (inst.job(a).consumes(k) > 0 && inst.job(b).consumes(k) > 0) return true;
    }
    return false;
  };

  std::set<JobId> closure{job};
  std::vector<JobId> frontier{job};
  const auto include = [&](JobId i) {
    if (closure.insert(i).second) frontier.push_back(i);
  };

  while (!frontier.empty()) {
    const JobId j = frontier.back();
    frontier.pop_back();
    const int start = schedule.start(j);

    for (JobId i : graph.preds(j)) {
      if (completion(inst, schedule, i) == start) include(i);
    }
    for (const auto& other : inst.jobs) {
      if (other.id != j && completion(inst, schedule, other.id) == start && shares_resource(other.id, j)) {
        include(other.id);
      }
    }
    for (ResourceId k = 1; k <= m; ++k) {
      if (inst.job(j).consumes(k) <= 0) continue;
      const auto& runs = intervals[static_cast<std::size_t>(k - 1)];
      for (std::size_t r = 1; r < runs.size(); ++r) {
        if (runs[r].first != start) continue;
        const int previous_end = runs[r - 1].second;
        for (const auto& other : inst.jobs) {
          if (other.consumes(k) > 0 && completion(inst, schedule, other.id) == previous_end) include(other.id);
        }
      }
    }
  }
  return {closure.begin(), closure.end()};
}

std::vector<ImprovementInterval> find_intervals_to_relax(const Instance& inst, const Schedule& schedule, int limit,
                                                         SortKey key, JobId target, const Instance& availability) {
  const auto closure = left_shift_closure(inst, schedule, target, availability);

  // The relaxed schedule only changes where the set of kept jobs changes.
  std::vector<int> best(schedule.starts);
  for (int t : suffix_breakpoints(schedule)) {
    const auto relaxed = suffix_relaxed_schedule(inst, schedule, t);
    for (JobId j : closure) {
      auto& b = best[static_cast<std::size_t>(j - 1)];
      b = std::min(b, relaxed.start(j));
    }
  }

  std::vector<ImprovementInterval> candidates;
  for (JobId j : closure) {
    const int s = best[static_cast<std::size_t>(j - 1)];
    if (s < schedule.start(j)) candidates.push_back({j, s, s + inst.job(j).duration});
  }
  std::sort(candidates.begin(), candidates.end(), [&](const ImprovementInterval& a, const ImprovementInterval& b) {
    const int ka = key == SortKey::start ? a.start : schedule.start(a.job) - a.start;
    const int kb = key == SortKey::start ? b.start : schedule.start(b.job) - b.start;
    return ka != kb ? ka < kb : a.job < b.job;
  });
  if (static_cast<int>(candidates.size()) > limit) candidates.resize(static_cast<std::size_t>(std::max(limit, 0)));
  return candidates;
}

RelaxationRun run_ssira(const Instance& inst, const Schedule& initial, const SsiraParams& params, JobId target,
                        const SolveLimits& limits) {
  params.check();
  if (target < 1 || target > inst.job_count() || !precedence_graph(inst).is_root(target)) {
    throw std::invalid_argument("target " + std::to_string(target) + " is not a project");
  }
  if (const auto report = validate(inst, initial); !report.feasible()) {
    throw std::invalid_argument("initial schedule is infeasible: " + report.violations.front().describe());
  }

  RelaxationRun run;
  run.final_proposal = identity_proposal(inst, initial);
  Instance working = inst;
  Schedule current = initial;

  for (int iteration = 1; iteration <= params.iterations; ++iteration) {
    const auto intervals = find_intervals_to_relax(working, current, params.interval_limit, params.key, target, inst);
    if (intervals.empty()) break;

    for (const auto& chi : intervals) {
      const auto& job = working.job(chi.job);
      for (ResourceId k = 1; k <= working.resource_count(); ++k) {
        const int q = job.consumes(k);
        if (q <= 0) continue;
        for (int t = chi.start; t < chi.end; ++t) working.resource(k).adjust(t, q);
      }
    }

    const auto solved = solve_heuristic(working, limits, current);
    if (!solved.feasible) throw std::logic_error("re-solve failed after a capacity increase");
    current = solved.schedule;

    run.iterations.push_back(account_iteration(inst, initial, working, current, target, iteration));
    run.final_proposal = run.iterations.back();
  }
  return run;
}

}  // namespace bottleneck
