#include "bottleneck/solver.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace bottleneck {

namespace {

using Clock = std::chrono::steady_clock;

struct Demand {
  int resource;  // position, id - 1
  int amount;
};

// Remaining capacity per resource and period, with placement helpers.
class ResidualProfile {
 public:
  explicit ResidualProfile(const Instance& inst) : horizon_(inst.horizon) {
    residual_.resize(inst.resources.size());
    for (const auto& r : inst.resources) {
      auto& row = residual_[static_cast<std::size_t>(r.id - 1)];
      row.resize(static_cast<std::size_t>(horizon_));
      for (int t = 0; t < horizon_; ++t) row[static_cast<std::size_t>(t)] = r.capacity(t);
    }
  }

  // Last period in [start, start + duration) where the job does not fit, or -1.
  int last_conflict(const std::vector<Demand>& demand, int start, int duration) const {
    for (int t = start + duration - 1; t >= start; --t) {
      for (const auto& d : demand) {
        if (residual_[static_cast<std::size_t>(d.resource)][static_cast<std::size_t>(t)] < d.amount) return t;
      }
    }
    return -1;
  }

  int first_conflict(const std::vector<Demand>& demand, int start, int duration) const {
    for (int t = start; t < start + duration; ++t) {
      for (const auto& d : demand) {
        if (residual_[static_cast<std::size_t>(d.resource)][static_cast<std::size_t>(t)] < d.amount) return t;
      }
    }
    return -1;
  }

  bool fits(const std::vector<Demand>& demand, int start, int duration) const {
    return start >= 0 && start + duration <= horizon_ && last_conflict(demand, start, duration) < 0;
  }

  std::optional<int> earliest_fit(const std::vector<Demand>& demand, int duration, int from) const {
    int t = std::max(from, 0);
    while (t + duration <= horizon_) {
      const int conflict = last_conflict(demand, t, duration);
      if (conflict < 0) return t;
      t = conflict + 1;
    }
    return std::nullopt;
  }

  // Latest start s >= lowest with s + duration <= latest_completion.
  std::optional<int> latest_fit(const std::vector<Demand>& demand, int duration, int latest_completion,
                                int lowest) const {
    int t = std::min(latest_completion, horizon_) - duration;
    while (t >= lowest) {
      const int conflict = first_conflict(demand, t, duration);
      if (conflict < 0) return t;
      t = conflict - duration;
    }
    return std::nullopt;
  }

  void place(const std::vector<Demand>& demand, int start, int duration, int sign = 1) {
    for (const auto& d : demand) {
      auto& row = residual_[static_cast<std::size_t>(d.resource)];
      for (int t = start; t < start + duration; ++t) row[static_cast<std::size_t>(t)] -= sign * d.amount;
    }
  }
  void remove(const std::vector<Demand>& demand, int start, int duration) { place(demand, start, duration, -1); }

 private:
  int horizon_;
  std::vector<std::vector<int>> residual_;
};

std::vector<std::vector<Demand>> demands_of(const Instance& inst) {
  std::vector<std::vector<Demand>> out(inst.jobs.size());
  for (const auto& job : inst.jobs) {
    for (std::size_t k = 0; k < job.consumption.size(); ++k) {
      if (job.consumption[k] > 0) out[static_cast<std::size_t>(job.id - 1)].push_back({static_cast<int>(k), job.consumption[k]});
    }
  }
  return out;
}

std::size_t at(JobId j) { return static_cast<std::size_t>(j - 1); }

constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

// ---------------------------------------------------------------------------
// Heuristic

class HeuristicSolver {
 public:
  HeuristicSolver(const Instance& inst, const SolveLimits& limits)
      : inst_(inst),
        graph_(precedence_graph(inst)),
        demand_(demands_of(inst)),
        limits_(limits),
        deadline_(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(limits.time_limit))),
        rng_(limits.seed) {
    compute_priorities();
  }

  SolveResult run(const std::optional<Schedule>& warm_start) {
    if (warm_start) {
      if (!validate(inst_, *warm_start).feasible()) {
        throw std::logic_error("warm start schedule is infeasible for this instance");
      }
      consider(*warm_start);
      try_list(order_by_start(*warm_start));
    }

    // Deterministic priority rules first, then seeded perturbations.
    for (int rule = 0; rule < kRuleCount && !expired(); ++rule) try_list(build_list(rule, false));
    for (int r = 0; r < limits_.restarts && !expired(); ++r) try_list(build_list(r % kRuleCount, true));

    if (best_) descend();

    SolveResult result;
    if (best_) {
      result.feasible = true;
      result.schedule = *best_;
      result.objective = best_objective_;
    }
    return result;
  }

 private:
  static constexpr int kRuleCount = 3;

  void compute_priorities() {
    const int n = inst_.job_count();
    tail_.assign(static_cast<std::size_t>(n), 0);
    head_.assign(static_cast<std::size_t>(n), 0);
    root_due_.assign(static_cast<std::size_t>(n), std::numeric_limits<int>::max() / 2);
    const auto& topo = graph_.topological_order;
    for (JobId j : topo) {
      for (JobId i : graph_.preds(j)) {
        head_[at(j)] = std::max(head_[at(j)], head_[at(i)] + inst_.job(i).duration);
      }
    }
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      const JobId j = *it;
      const JobId s = graph_.succ(j);
      tail_[at(j)] = inst_.job(j).duration + (s != 0 ? tail_[at(s)] : 0);
      if (s != 0) {
        root_due_[at(j)] = root_due_[at(s)];
      } else if (inst_.job(j).due_date) {
        root_due_[at(j)] = *inst_.job(j).due_date;
      }
    }
  }

  // Smaller tuple = higher priority.
  std::array<std::int64_t, 3> key(int rule, JobId j) const {
    const std::int64_t due = root_due_[at(j)];
    const std::int64_t tail = tail_[at(j)];
    const std::int64_t slack = due - tail - head_[at(j)];
    switch (rule) {
      case 0:
        return {due, -tail, j};  // earliest root due date
      case 1:
        return {slack, due, j};  // minimum slack
      default:
        return {-tail, due, j};  // longest remaining path
    }
  }

  std::vector<JobId> build_list(int rule, bool perturb) {
    const int n = inst_.job_count();
    std::vector<int> missing(static_cast<std::size_t>(n));
    std::vector<JobId> eligible;
    for (JobId j = 1; j <= n; ++j) {
      missing[at(j)] = static_cast<int>(graph_.preds(j).size());
      if (missing[at(j)] == 0) eligible.push_back(j);
    }
    std::vector<JobId> list;
    list.reserve(static_cast<std::size_t>(n));
    while (!eligible.empty()) {
      std::sort(eligible.begin(), eligible.end(), [&](JobId a, JobId b) { return key(rule, a) < key(rule, b); });
      std::size_t pick = 0;
      if (perturb && eligible.size() > 1) {
        // Rank-biased sampling: rank r drawn with weight 1 / (r + 1)^2.
        std::vector<double> weights(eligible.size());
        for (std::size_t r = 0; r < weights.size(); ++r) weights[r] = 1.0 / static_cast<double>((r + 1) * (r + 1));
        std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
        pick = dist(rng_);
      }
      const JobId j = eligible[pick];
      eligible.erase(eligible.begin() + static_cast<std::ptrdiff_t>(pick));
      list.push_back(j);
      if (const JobId s = graph_.succ(j); s != 0 && --missing[at(s)] == 0) eligible.push_back(s);
    }
    return list;
  }

  std::optional<Schedule> sgs(const std::vector<JobId>& list) const {
    ResidualProfile profile(inst_);
    Schedule s;
    s.starts.assign(inst_.jobs.size(), 0);
    for (JobId j : list) {
      int ready = 0;
      for (JobId i : graph_.preds(j)) ready = std::max(ready, s.start(i) + inst_.job(i).duration);
      const auto start = profile.earliest_fit(demand_[at(j)], inst_.job(j).duration, ready);
      if (!start) return std::nullopt;
      s.starts[at(j)] = *start;
      profile.place(demand_[at(j)], *start, inst_.job(j).duration);
    }
    return s;
  }

  // Right-justify against due dates, then left-justify in the new start order.
  std::optional<Schedule> justify(const Schedule& s) const {
    const int n = inst_.job_count();
    const int cmax = makespan(inst_, s);
    std::vector<JobId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(), [&](JobId a, JobId b) {
      const int ca = completion(inst_, s, a);
      const int cb = completion(inst_, s, b);
      return ca != cb ? ca > cb : a > b;
    });

    ResidualProfile back_profile(inst_);
    Schedule back;
    back.starts.assign(static_cast<std::size_t>(n), 0);
    for (JobId j : order) {
      const auto& job = inst_.job(j);
      int bound = 0;
      if (const JobId succ = graph_.succ(j); succ != 0) {
        bound = back.start(succ);
      } else if (job.due_date) {
        bound = std::max(completion(inst_, s, j), std::min(*job.due_date, inst_.horizon));
      } else {
        bound = cmax;
      }
      const auto start = back_profile.latest_fit(demand_[at(j)], job.duration, bound, 0);
      if (!start) return std::nullopt;
      back.starts[at(j)] = *start;
      back_profile.place(demand_[at(j)], *start, job.duration);
    }
    return sgs(order_by_start(back));
  }

  static std::vector<JobId> order_by_start(const Schedule& s) {
    std::vector<JobId> order(s.starts.size());
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(), [&](JobId a, JobId b) { return s.start(a) < s.start(b); });
    return order;
  }

  // Returns true if the incumbent improved.
  bool consider(const Schedule& s) {
    const std::int64_t obj = objective(inst_, s);
    if (!best_ || obj < best_objective_ || (obj == best_objective_ && s.starts < best_->starts)) {
      const bool improved = !best_ || obj < best_objective_;
      best_ = s;
      best_objective_ = obj;
      return improved;
    }
    return false;
  }

  bool try_list(const std::vector<JobId>& list) {
    auto s = sgs(list);
    if (!s) return false;
    bool improved = consider(*s);
    for (int round = 0; round < 3; ++round) {
      auto j = justify(*s);
      if (!j || objective(inst_, *j) >= objective(inst_, *s)) break;
      s = std::move(j);
      improved = consider(*s) || improved;
    }
    return improved;
  }

  // First-improvement descent over adjacent swaps in the incumbent's start order.
  void descend() {
    for (int pass = 0; pass < 2 * inst_.job_count() && !expired() && best_objective_ > 0; ++pass) {
      const auto list = order_by_start(*best_);
      bool improved = false;
      for (std::size_t i = 0; i + 1 < list.size() && !expired(); ++i) {
        if (graph_.succ(list[i]) == list[i + 1]) continue;
        auto swapped = list;
        std::swap(swapped[i], swapped[i + 1]);
        if (try_list(swapped)) {
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
  }

  bool expired() const { return Clock::now() >= deadline_; }

  const Instance& inst_;
  PrecedenceGraph graph_;
  std::vector<std::vector<Demand>> demand_;
  SolveLimits limits_;
  Clock::time_point deadline_;
  std::mt19937_64 rng_;

  std::vector<int> tail_;
  std::vector<int> head_;
  std::vector<int> root_due_;

  std::optional<Schedule> best_;
  std::int64_t best_objective_ = kUnbounded;
};

// ---------------------------------------------------------------------------
// Exact search

class ExactSearch {
 public:
  ExactSearch(const Instance& inst, const SolveLimits& limits)
      : inst_(inst),
        graph_(precedence_graph(inst)),
        demand_(demands_of(inst)),
        limits_(limits),
        deadline_(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(limits.time_limit))),
        profile_(inst) {
    capacity_events_.push_back(0);
    for (int t = 1; t < inst.horizon; ++t) {
      for (const auto& r : inst.resources) {
        if (r.capacity(t) != r.capacity(t - 1)) {
          capacity_events_.push_back(t);
          break;
        }
      }
    }
    starts_.assign(inst.jobs.size(), -1);
  }

  ExactResult run() {
    const auto seed = solve_heuristic(inst_, limits_);
    if (seed.feasible) {
      result_.found = true;
      result_.schedule = seed.schedule;
      result_.objective = seed.objective;
    }
    best_ = seed.feasible ? seed.objective : kUnbounded;
    dfs(0, 0, 0, 0);
    result_.optimal = !aborted_;
    result_.nodes = nodes_;
    return result_;
  }

 private:
  bool limit_hit() {
    if (nodes_ >= limits_.node_limit) return true;
    if ((nodes_ & 0x3FF) == 0 && Clock::now() >= deadline_) return true;
    return false;
  }

  std::int64_t lower_bound(int prev_start, std::int64_t cost) {
    std::int64_t bound = cost;
    for (JobId j : graph_.topological_order) {
      if (starts_[at(j)] >= 0) continue;
      int est = prev_start;
      for (JobId i : graph_.preds(j)) {
        const int ready = starts_[at(i)] >= 0 ? starts_[at(i)] + inst_.job(i).duration
                                              : est_[at(i)] + inst_.job(i).duration;
        est = std::max(est, ready);
      }
      est_[at(j)] = est;
      const auto& job = inst_.job(j);
      if (job.due_date) bound += job.weight * std::max(0, est + job.duration - *job.due_date);
    }
    return bound;
  }

  void dfs(int placed, int prev_start, JobId prev_job, std::int64_t cost) {
    if (aborted_) return;
    ++nodes_;
    if (limit_hit()) {
      aborted_ = true;
      return;
    }
    const int n = inst_.job_count();
    if (placed == n) {
      if (cost < best_ || !result_.found) {
        best_ = cost;
        result_.found = true;
        result_.objective = cost;
        result_.schedule.starts = starts_;
      }
      return;
    }
    est_.assign(static_cast<std::size_t>(n), 0);
    if (lower_bound(prev_start, cost) >= best_) return;

    // Event points: t = 0, capacity changes, completions of placed jobs.
    std::vector<int> events = capacity_events_;
    for (JobId i = 1; i <= n; ++i) {
      if (starts_[at(i)] >= 0) events.push_back(starts_[at(i)] + inst_.job(i).duration);
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    for (JobId j = 1; j <= n; ++j) {
      if (starts_[at(j)] >= 0) continue;
      int ready = j > prev_job ? prev_start : prev_start + 1;
      bool eligible = true;
      for (JobId i : graph_.preds(j)) {
        if (starts_[at(i)] < 0) {
          eligible = false;
          break;
        }
        ready = std::max(ready, starts_[at(i)] + inst_.job(i).duration);
      }
      if (!eligible) continue;
      const auto& job = inst_.job(j);
      for (auto it = std::lower_bound(events.begin(), events.end(), ready); it != events.end(); ++it) {
        const int t = *it;
        if (t + job.duration > inst_.horizon) break;
        if (!profile_.fits(demand_[at(j)], t, job.duration)) continue;
        std::int64_t next_cost = cost;
        if (job.due_date) next_cost += job.weight * std::max(0, t + job.duration - *job.due_date);
        if (next_cost >= best_) continue;
        starts_[at(j)] = t;
        profile_.place(demand_[at(j)], t, job.duration);
        dfs(placed + 1, t, j, next_cost);
        profile_.remove(demand_[at(j)], t, job.duration);
        starts_[at(j)] = -1;
        if (aborted_) return;
      }
    }
  }

  const Instance& inst_;
  PrecedenceGraph graph_;
  std::vector<std::vector<Demand>> demand_;
  SolveLimits limits_;
  Clock::time_point deadline_;
  ResidualProfile profile_;
  std::vector<int> capacity_events_;
  std::vector<int> starts_;
  std::vector<int> est_;
  std::int64_t best_ = kUnbounded;
  std::int64_t nodes_ = 0;
  bool aborted_ = false;
  ExactResult result_;
};

}  // namespace

std::optional<Schedule> serial_sgs(const Instance& inst, const std::vector<JobId>& order) {
  const auto graph = precedence_graph(inst);
  const auto demand = demands_of(inst);
  ResidualProfile profile(inst);
  Schedule s;
  s.starts.assign(inst.jobs.size(), -1);
  for (JobId j : order) {
    int ready = 0;
    for (JobId i : graph.preds(j)) {
      if (s.start(i) < 0) throw std::invalid_argument("job list is not precedence feasible");
      ready = std::max(ready, s.start(i) + inst.job(i).duration);
    }
    const auto start = profile.earliest_fit(demand[at(j)], inst.job(j).duration, ready);
    if (!start) return std::nullopt;
    s.starts[at(j)] = *start;
    profile.place(demand[at(j)], *start, inst.job(j).duration);
  }
  return s;
}

SolveResult solve_heuristic(const Instance& inst, const SolveLimits& limits, const std::optional<Schedule>& warm_start) {
  validate_structure(inst);
  if (limits.time_limit <= 0) throw std::invalid_argument("time limit must be positive");
  HeuristicSolver solver(inst, limits);
  return solver.run(warm_start);
}

ExactResult solve_exact(const Instance& inst, const SolveLimits& limits) {
  validate_structure(inst);
  if (inst.job_count() > kExactJobLimit) {
    throw std::invalid_argument("exact search is limited to " + std::to_string(kExactJobLimit) + " jobs");
  }
  ExactSearch search(inst, limits);
  return search.run();
}

}  // namespace bottleneck
