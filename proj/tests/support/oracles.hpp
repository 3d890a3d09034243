#pragma once

// Independent reference computations used to check the library. Each one
// follows the textbook definition directly and shares no code path with the
// implementation it checks.

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "bottleneck/accounting.hpp"
#include "bottleneck/instance.hpp"
#include "bottleneck/rational.hpp"

namespace oracles {

using namespace bottleneck;

/// Load of resource k at t by scanning every job.
inline int load_at(const Instance& inst, const std::vector<int>& starts, ResourceId k, int t) {
  int load = 0;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    const auto& job = inst.jobs[j];
    if (starts[j] <= t && t < starts[j] + job.duration && static_cast<std::size_t>(k - 1) < job.consumption.size()) {
      load += job.consumption[static_cast<std::size_t>(k - 1)];
    }
  }
  return load;
}

inline bool feasible(const Instance& inst, const std::vector<int>& starts) {
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    if (starts[j] < 0 || starts[j] + inst.jobs[j].duration > inst.horizon) return false;
  }
  for (const auto& [i, j] : inst.precedences) {
    if (starts[static_cast<std::size_t>(i - 1)] + inst.jobs[static_cast<std::size_t>(i - 1)].duration >
        starts[static_cast<std::size_t>(j - 1)]) {
      return false;
    }
  }
  for (const auto& r : inst.resources) {
    for (int t = 0; t < inst.horizon; ++t) {
      if (load_at(inst, starts, r.id, t) > r.capacity(t)) return false;
    }
  }
  return true;
}

inline std::int64_t weighted_tardiness(const Instance& inst, const std::vector<int>& starts) {
  std::int64_t total = 0;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    const auto& job = inst.jobs[j];
    if (job.due_date) total += job.weight * std::max(0, starts[j] + job.duration - *job.due_date);
  }
  return total;
}

/// Minimum weighted tardiness over every start vector with S_j in [0, T - d_j].
/// Enumerates the full grid job by job (predecessors first so infeasible
/// prefixes can be cut) and prunes prefixes whose incurred cost already
/// reaches the incumbent. Returns -1 if no feasible schedule exists.
inline std::int64_t brute_force_optimum(const Instance& inst) {
  const int n = inst.job_count();
  std::vector<std::vector<int>> preds(static_cast<std::size_t>(n));
  for (const auto& [i, j] : inst.precedences) preds[static_cast<std::size_t>(j - 1)].push_back(i);
  // Order: repeatedly take the lowest job whose predecessors are all ordered.
  std::vector<int> order;
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  while (static_cast<int>(order.size()) < n) {
    for (int j = 1; j <= n; ++j) {
      if (taken[static_cast<std::size_t>(j - 1)]) continue;
      bool ready = true;
      for (int i : preds[static_cast<std::size_t>(j - 1)]) ready = ready && taken[static_cast<std::size_t>(i - 1)];
      if (ready) {
        order.push_back(j);
        taken[static_cast<std::size_t>(j - 1)] = true;
        break;
      }
    }
  }

  std::vector<std::vector<int>> load(inst.resources.size(), std::vector<int>(static_cast<std::size_t>(inst.horizon), 0));
  std::vector<int> starts(static_cast<std::size_t>(n), -1);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();

  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t depth, std::int64_t cost) {
    if (cost >= best) return;
    if (depth == order.size()) {
      best = cost;
      return;
    }
    const int j = order[depth];
    const auto& job = inst.jobs[static_cast<std::size_t>(j - 1)];
    for (int s = 0; s + job.duration <= inst.horizon; ++s) {
      bool ok = true;
      for (int i : preds[static_cast<std::size_t>(j - 1)]) {
        ok = ok && starts[static_cast<std::size_t>(i - 1)] + inst.jobs[static_cast<std::size_t>(i - 1)].duration <= s;
      }
      for (std::size_t k = 0; ok && k < inst.resources.size(); ++k) {
        const int q = k < job.consumption.size() ? job.consumption[k] : 0;
        if (q == 0) continue;
        for (int t = s; ok && t < s + job.duration; ++t) {
          ok = load[k][static_cast<std::size_t>(t)] + q <= inst.resources[k].capacity(t);
        }
      }
      if (!ok) continue;
      for (std::size_t k = 0; k < inst.resources.size(); ++k) {
        const int q = k < job.consumption.size() ? job.consumption[k] : 0;
        for (int t = s; t < s + job.duration; ++t) load[k][static_cast<std::size_t>(t)] += q;
      }
      starts[static_cast<std::size_t>(j - 1)] = s;
      const std::int64_t add = job.due_date ? job.weight * std::max(0, s + job.duration - *job.due_date) : 0;
      rec(depth + 1, cost + add);
      starts[static_cast<std::size_t>(j - 1)] = -1;
      for (std::size_t k = 0; k < inst.resources.size(); ++k) {
        const int q = k < job.consumption.size() ? job.consumption[k] : 0;
        for (int t = s; t < s + job.duration; ++t) load[k][static_cast<std::size_t>(t)] -= q;
      }
    }
  };
  rec(0, 0);
  return best == std::numeric_limits<std::int64_t>::max() ? -1 : best;
}

/// Suffix-relaxed start of job j by direct recursion on the definition.
inline int relaxed_start(const Instance& inst, const std::vector<int>& starts, int t, JobId j) {
  if (starts[static_cast<std::size_t>(j - 1)] <= t) return starts[static_cast<std::size_t>(j - 1)];
  int best = 0;
  for (const auto& [i, succ] : inst.precedences) {
    if (succ == j) best = std::max(best, relaxed_start(inst, starts, t, i) + inst.jobs[static_cast<std::size_t>(i - 1)].duration);
  }
  return best;
}

inline std::vector<int> relaxed_schedule(const Instance& inst, const std::vector<int>& starts, int t) {
  std::vector<int> out(starts.size());
  for (JobId j = 1; j <= inst.job_count(); ++j) out[static_cast<std::size_t>(j - 1)] = relaxed_start(inst, starts, t, j);
  return out;
}

/// Left-shift closure by naive iteration to a fixpoint over all job pairs.
inline std::set<JobId> closure(const Instance& inst, const std::vector<int>& starts, JobId target,
                               const Instance& availability) {
  auto end_of = [&](JobId j) { return starts[static_cast<std::size_t>(j - 1)] + inst.jobs[static_cast<std::size_t>(j - 1)].duration; };
  auto start_of = [&](JobId j) { return starts[static_cast<std::size_t>(j - 1)]; };
  auto uses = [&](JobId j, ResourceId k) { return inst.jobs[static_cast<std::size_t>(j - 1)].consumes(k) > 0; };
  const int m = inst.resource_count();

  // Availability runs: t is a run start if c(t) > 0 and (t == 0 or c(t-1) == 0).
  auto run_start = [&](ResourceId k, int t) {
    return t < availability.horizon && availability.capacity(k, t) > 0 && (t == 0 || availability.capacity(k, t - 1) == 0);
  };
  auto previous_run_end = [&](ResourceId k, int t) {
    // Walk back over the gap to the end of the previous positive run.
    int u = t - 1;
    while (u >= 0 && availability.capacity(k, u) == 0) --u;
    return u < 0 ? -1 : u + 1;
  };

  std::set<JobId> set{target};
  bool changed = true;
  while (changed) {
    changed = false;
    for (JobId j : std::set<JobId>(set)) {
      for (JobId i = 1; i <= inst.job_count(); ++i) {
        if (set.count(i)) continue;
        bool add = false;
        for (const auto& [a, b] : inst.precedences) add = add || (a == i && b == j && end_of(i) == start_of(j));
        for (ResourceId k = 1; k <= m; ++k) add = add || (i != j && uses(i, k) && uses(j, k) && end_of(i) == start_of(j));
        for (ResourceId k = 1; k <= m; ++k) {
          if (!uses(j, k) || !run_start(k, start_of(j))) continue;
          const int prev = previous_run_end(k, start_of(j));
          add = add || (prev >= 0 && uses(i, k) && end_of(i) == prev);
        }
        if (add) {
          set.insert(i);
          changed = true;
        }
      }
    }
  }
  return set;
}

/// Indicator formulas evaluated literally.
inline Rational mrur(const Instance& inst, const std::vector<int>& starts, ResourceId k) {
  std::int64_t num = 0;
  int cmax = 0;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    num += static_cast<std::int64_t>(inst.jobs[j].duration) * inst.jobs[j].consumes(k);
    cmax = std::max(cmax, starts[j] + inst.jobs[j].duration);
  }
  std::int64_t den = 0;
  for (int t = 0; t < cmax; ++t) den += inst.capacity(k, t);
  return den == 0 ? Rational(0) : Rational(num, den);
}

inline std::vector<std::pair<int, int>> active_runs(const Instance& inst, const std::vector<int>& starts, ResourceId k) {
  std::vector<std::pair<int, int>> runs;
  for (int t = 0; t < inst.horizon; ++t) {
    if (load_at(inst, starts, k, t) == 0) continue;
    if (!runs.empty() && runs.back().second == t) {
      runs.back().second = t + 1;
    } else {
      runs.emplace_back(t, t + 1);
    }
  }
  return runs;
}

inline Rational pru(const Instance& inst, const std::vector<int>& starts, ResourceId k, std::pair<int, int> run) {
  std::int64_t num = 0;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    const auto& job = inst.jobs[j];
    if (job.consumes(k) > 0 && run.first <= starts[j] && starts[j] <= run.second - 1) {
      num += static_cast<std::int64_t>(job.duration) * job.consumes(k);
    }
  }
  std::int64_t den = 0;
  for (int t = run.first; t < run.second; ++t) den += inst.capacity(k, t);
  return den == 0 ? Rational(0) : Rational(num, den);
}

inline Rational auau(const Instance& inst, const std::vector<int>& starts, ResourceId k) {
  const auto runs = active_runs(inst, starts, k);
  if (runs.empty()) return Rational(0);
  Rational sum;
  for (const auto& run : runs) sum += pru(inst, starts, k, run);
  return sum / Rational(static_cast<std::int64_t>(runs.size()));
}

/// Pointwise minimal capacity >= original admitting the schedule.
inline int minimal_capacity(const Instance& original, const std::vector<int>& starts, ResourceId k, int t) {
  return std::max(original.capacity(k, t), load_at(original, starts, k, t));
}

}  // namespace oracles
