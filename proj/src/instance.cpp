#include "bottleneck/instance.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace bottleneck {

JobId PrecedenceGraph::project_of(JobId j) const {
  while (succ(j) != 0) j = succ(j);
  return j;
}

PrecedenceGraph precedence_graph(const Instance& inst) {
  const int n = inst.job_count();
  PrecedenceGraph g;
  g.predecessors.assign(static_cast<std::size_t>(n), {});
  g.successor.assign(static_cast<std::size_t>(n), 0);

  for (const auto& [i, j] : inst.precedences) {
    if (i < 1 || i > n || j < 1 || j > n) {
      throw InstanceError("precedence (" + std::to_string(i) + "," + std::to_string(j) +
                          ") references an unknown job");
    }
    if (i == j) throw InstanceError("self precedence on job " + std::to_string(i));
    auto& out = g.successor[static_cast<std::size_t>(i - 1)];
    if (out != 0) {
      throw InstanceError("job " + std::to_string(i) + " has more than one successor (not an in-forest)");
    }
    out = j;
    g.predecessors[static_cast<std::size_t>(j - 1)].push_back(i);
  }
  for (auto& p : g.predecessors) std::sort(p.begin(), p.end());

  // Kahn's algorithm with a min-heap keeps the order deterministic.
  std::vector<int> indegree(static_cast<std::size_t>(n), 0);
  for (int j = 1; j <= n; ++j) indegree[static_cast<std::size_t>(j - 1)] = static_cast<int>(g.preds(j).size());
  std::priority_queue<JobId, std::vector<JobId>, std::greater<>> ready;
  for (int j = 1; j <= n; ++j) {
    if (indegree[static_cast<std::size_t>(j - 1)] == 0) ready.push(j);
  }
  while (!ready.empty()) {
    const JobId j = ready.top();
    ready.pop();
    g.topological_order.push_back(j);
    if (const JobId s = g.succ(j); s != 0) {
      if (--indegree[static_cast<std::size_t>(s - 1)] == 0) ready.push(s);
    }
  }
  if (static_cast<int>(g.topological_order.size()) != n) throw InstanceError("precedence graph has a cycle");
  return g;
}

std::vector<JobId> projects(const Instance& inst) {
  const auto g = precedence_graph(inst);
  std::vector<JobId> roots;
  for (JobId j = 1; j <= inst.job_count(); ++j) {
    if (g.is_root(j)) roots.push_back(j);
  }
  return roots;
}

void validate_structure(const Instance& inst) {
  std::vector<std::string> problems;
  const int n = inst.job_count();
  const int m = inst.resource_count();

  if (inst.horizon <= 0) problems.push_back("horizon must be positive");
  for (int idx = 0; idx < n; ++idx) {
    if (inst.jobs[static_cast<std::size_t>(idx)].id != idx + 1) {
      problems.push_back("job ids must be dense 1..n (position " + std::to_string(idx + 1) + ")");
    }
  }
  for (int idx = 0; idx < m; ++idx) {
    if (inst.resources[static_cast<std::size_t>(idx)].id != idx + 1) {
      problems.push_back("resource ids must be dense 1..m (position " + std::to_string(idx + 1) + ")");
    }
  }
  if (!problems.empty()) {
    std::string msg = "invalid instance:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw InstanceError(msg);
  }

  PrecedenceGraph g;
  try {
    g = precedence_graph(inst);
  } catch (const InstanceError& e) {
    problems.emplace_back(e.what());
  }

  std::vector<int> max_capacity(static_cast<std::size_t>(m), 0);
  for (const auto& r : inst.resources) {
    for (int v : r.base_pattern) {
      if (v < 0) problems.push_back("resource " + std::to_string(r.id) + " has a negative base capacity");
    }
    for (int t = 0; t < inst.horizon; ++t) {
      const int c = r.capacity(t);
      if (c < 0) {
        problems.push_back("resource " + std::to_string(r.id) + " has negative capacity at t=" + std::to_string(t));
        break;
      }
      max_capacity[static_cast<std::size_t>(r.id - 1)] = std::max(max_capacity[static_cast<std::size_t>(r.id - 1)], c);
    }
  }

  for (const auto& job : inst.jobs) {
    const std::string name = "job " + std::to_string(job.id);
    if (job.duration < 1) problems.push_back(name + " has non-positive duration");
    if (job.duration > inst.horizon) problems.push_back(name + " is longer than the horizon");
    if (job.weight < 0) problems.push_back(name + " has a negative weight");
    if (static_cast<int>(job.consumption.size()) > m) problems.push_back(name + " consumes an unknown resource");
    for (std::size_t k = 0; k < job.consumption.size() && k < max_capacity.size(); ++k) {
      const int q = job.consumption[k];
      if (q < 0) problems.push_back(name + " has negative consumption");
      if (q > max_capacity[k]) {
        problems.push_back(name + " needs " + std::to_string(q) + " of resource " + std::to_string(k + 1) +
                           " but capacity never exceeds " + std::to_string(max_capacity[k]));
      }
    }
    if (!g.successor.empty() && !g.is_root(job.id) && (job.due_date.has_value() || job.weight > 0)) {
      problems.push_back(name + " is not a project root but carries a due date or weight");
    }
  }

  if (!problems.empty()) {
    std::string msg = "invalid instance:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw InstanceError(msg);
  }
}

std::string Violation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case ViolationKind::precedence:
      os << "precedence " << other << "->" << job << " violated (C_" << other << "=" << load << " > S_" << job
         << "=" << time << ")";
      break;
    case ViolationKind::capacity:
      os << "capacity of resource " << resource << " exceeded at t=" << time << " (load " << load << " > "
         << capacity << ")";
      break;
    case ViolationKind::horizon:
      os << "job " << job << " completes at " << time << " beyond horizon " << capacity;
      break;
    case ViolationKind::negative_start:
      os << "job " << job << " starts before 0";
      break;
  }
  return os.str();
}

FeasibilityReport validate(const Instance& inst, const Schedule& schedule) {
  validate_structure(inst);
  if (static_cast<int>(schedule.starts.size()) != inst.job_count()) {
    throw InstanceError("schedule has " + std::to_string(schedule.starts.size()) + " starts for " +
                        std::to_string(inst.job_count()) + " jobs");
  }
  FeasibilityReport report;
  for (const auto& job : inst.jobs) {
    const int s = schedule.start(job.id);
    if (s < 0) report.violations.push_back({ViolationKind::negative_start, job.id});
    if (s + job.duration > inst.horizon) {
      report.violations.push_back(
          {ViolationKind::horizon, job.id, 0, 0, s + job.duration, 0, inst.horizon});
    }
  }
  for (const auto& [i, j] : inst.precedences) {
    if (completion(inst, schedule, i) > schedule.start(j)) {
      report.violations.push_back(
          {ViolationKind::precedence, j, i, 0, schedule.start(j), completion(inst, schedule, i), 0});
    }
  }
  for (const auto& r : inst.resources) {
    const auto load = consumption_timeline(inst, schedule, r.id);
    for (int t = 0; t < inst.horizon; ++t) {
      const int c = r.capacity(t);
      if (load[static_cast<std::size_t>(t)] > c) {
        report.violations.push_back(
            {ViolationKind::capacity, 0, 0, r.id, t, load[static_cast<std::size_t>(t)], c});
      }
    }
  }
  return report;
}

int tardiness(const Instance& inst, const Schedule& schedule, JobId j) {
  const auto& due = inst.job(j).due_date;
  if (!due) return 0;
  return std::max(0, completion(inst, schedule, j) - *due);
}

TardinessSummary weighted_tardiness(const Instance& inst, const Schedule& schedule) {
  TardinessSummary out;
  for (const auto& job : inst.jobs) {
    if (!job.due_date) continue;
    const std::int64_t wt = job.weight * tardiness(inst, schedule, job.id);
    out.per_project[job.id] = wt;
    out.total += wt;
  }
  return out;
}

std::int64_t objective(const Instance& inst, const Schedule& schedule) {
  std::int64_t total = 0;
  for (const auto& job : inst.jobs) {
    if (job.due_date) total += job.weight * tardiness(inst, schedule, job.id);
  }
  return total;
}

std::vector<int> consumption_timeline(const Instance& inst, const Schedule& schedule, ResourceId k) {
  std::vector<int> load(static_cast<std::size_t>(std::max(inst.horizon, 0)), 0);
  for (const auto& job : inst.jobs) {
    const int q = job.consumes(k);
    if (q == 0) continue;
    const int s = std::max(0, schedule.start(job.id));
    const int e = std::min(inst.horizon, schedule.start(job.id) + job.duration);
    for (int t = s; t < e; ++t) load[static_cast<std::size_t>(t)] += q;
  }
  return load;
}

std::vector<int> capacity_timeline(const Instance& inst, ResourceId k) {
  std::vector<int> cap(static_cast<std::size_t>(std::max(inst.horizon, 0)));
  const auto& r = inst.resource(k);
  for (int t = 0; t < inst.horizon; ++t) cap[static_cast<std::size_t>(t)] = r.capacity(t);
  return cap;
}

int makespan(const Instance& inst, const Schedule& schedule) {
  int cmax = 0;
  for (const auto& job : inst.jobs) cmax = std::max(cmax, schedule.start(job.id) + job.duration);
  return cmax;
}

Resource constant_resource(ResourceId id, int value) {
  Resource r;
  r.id = id;
  r.base_pattern.fill(value);
  return r;
}

}  // namespace bottleneck
