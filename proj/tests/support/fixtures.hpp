#pragma once

// Hand-built instances and a seeded random generator for tiny instances.

#include <cstdint>
#include <random>

#include "bottleneck/instance.hpp"
#include "bottleneck/solver.hpp"

namespace fixtures {

using namespace bottleneck;

inline Job make_job(JobId id, int duration, std::vector<int> consumption, std::optional<int> due = std::nullopt,
                    std::int64_t weight = 0) {
  Job j;
  j.id = id;
  j.duration = duration;
  j.consumption = std::move(consumption);
  j.due_date = due;
  j.weight = weight;
  return j;
}

/// Three jobs d=(2,3,1), R1 demand (1,2,1), R1 capacity 2, 1->3 and 2->3,
/// job 3 due at 4 with weight `weight`.
inline Instance tiny1(int r1_capacity = 2, std::int64_t weight = 1, int horizon = 24) {
  Instance inst;
  inst.resources = {constant_resource(1, r1_capacity)};
  inst.jobs = {make_job(1, 2, {1}), make_job(2, 3, {2}), make_job(3, 1, {1}, 4, weight)};
  inst.precedences = {{1, 3}, {2, 3}};
  inst.horizon = horizon;
  return inst;
}

/// TINY-1 plus an idle resource R2 of capacity 2.
inline Instance tiny2() {
  Instance inst = tiny1();
  inst.resources.push_back(constant_resource(2, 2));
  for (auto& job : inst.jobs) job.consumption.push_back(0);
  return inst;
}

inline Schedule starts(std::vector<int> s) { return Schedule{std::move(s)}; }

/// R1 works an 8h shift [6,14) with capacity 1. Job 1 (d=2) ends at 14 on
/// day 0; job 2 (d=2) starts at the next shift start, t=30. Job 3 is an
/// unrelated job on R2.
inline Instance two_shift_fixture() {
  Instance inst;
  Resource r1;
  r1.id = 1;
  for (int h = 6; h < 14; ++h) r1.base_pattern[static_cast<std::size_t>(h)] = 1;
  inst.resources = {r1, constant_resource(2, 1)};
  inst.jobs = {make_job(1, 2, {1, 0}), make_job(2, 2, {1, 0}, 40, 1), make_job(3, 3, {0, 1}, 40, 1)};
  inst.horizon = 48;
  return inst;
}
inline Schedule two_shift_schedule() { return starts({12, 30, 11}); }

struct RandomSpec {
  int min_jobs = 3;
  int max_jobs = 8;
  int max_resources = 2;
  int min_horizon = 10;
  int max_horizon = 30;
  int max_duration = 4;
  int max_capacity = 4;
};

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Random structurally valid in-forest instance; not necessarily feasible.
inline Instance random_instance(std::mt19937_64& rng, const RandomSpec& spec = {}) {
  Instance inst;
  const int n = uniform(rng, spec.min_jobs, spec.max_jobs);
  const int m = uniform(rng, 1, spec.max_resources);
  inst.horizon = uniform(rng, spec.min_horizon, spec.max_horizon);

  for (int k = 1; k <= m; ++k) {
    Resource r;
    r.id = k;
    const int level = uniform(rng, 1, spec.max_capacity);
    const bool shifted = uniform(rng, 0, 2) == 0;
    const int on = uniform(rng, 0, 8);
    const int off = on + uniform(rng, 6, 16);
    for (int h = 0; h < kCapacityPeriod; ++h) {
      int c = level;
      if (shifted && (h < on || h >= off)) c = uniform(rng, 0, 1) == 0 ? 0 : std::max(1, level - 1);
      r.base_pattern[static_cast<std::size_t>(h)] = c;
    }
    inst.resources.push_back(r);
  }

  for (int j = 1; j <= n; ++j) {
    Job job;
    job.id = j;
    job.duration = uniform(rng, 1, spec.max_duration);
    for (int k = 1; k <= m; ++k) {
      const auto& p = inst.resources[static_cast<std::size_t>(k - 1)].base_pattern;
      const int cap = *std::max_element(p.begin(), p.end());
      job.consumption.push_back(uniform(rng, 0, 3) == 0 ? 0 : uniform(rng, 1, cap));
    }
    inst.jobs.push_back(job);
  }
  // Each job may point to one later job: acyclic, out-degree <= 1.
  for (int j = 1; j < n; ++j) {
    if (uniform(rng, 0, 2) != 0) inst.precedences.emplace_back(j, uniform(rng, j + 1, n));
  }
  std::vector<bool> root(static_cast<std::size_t>(n), true);
  for (const auto& [i, j] : inst.precedences) root[static_cast<std::size_t>(i - 1)] = false;
  for (auto& job : inst.jobs) {
    if (!root[static_cast<std::size_t>(job.id - 1)]) continue;
    job.due_date = uniform(rng, job.duration, inst.horizon);
    job.weight = uniform(rng, 1, 3);
  }
  return inst;
}

/// Random instance for which the heuristic finds a schedule.
inline Instance random_feasible_instance(std::mt19937_64& rng, const RandomSpec& spec = {}) {
  for (;;) {
    Instance inst = random_instance(rng, spec);
    SolveLimits limits;
    limits.restarts = 8;
    if (solve_heuristic(inst, limits).feasible) return inst;
  }
}

}  // namespace fixtures
