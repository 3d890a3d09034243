#include "bottleneck/indicators.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace bottleneck {

std::string_view indicator_name(Indicator indicator) {
  switch (indicator) {
    case Indicator::mrur:
      return "MRUR";
    case Indicator::auau:
      return "AUAU";
    case Indicator::mur:
      return "MUR";
    case Indicator::auad:
      return "AUAD";
  }
  return "?";
}

Indicator parse_indicator(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "mrur") return Indicator::mrur;
  if (lower == "auau") return Indicator::auau;
  if (lower == "mur") return Indicator::mur;
  if (lower == "auad") return Indicator::auad;
  throw std::invalid_argument("unknown indicator '" + std::string(name) + "'");
}

std::vector<ActivePeriod> active_periods(const Instance& inst, const Schedule& schedule, ResourceId k) {
  const auto load = consumption_timeline(inst, schedule, k);
  std::vector<ActivePeriod> periods;
  int t = 0;
  const int horizon = static_cast<int>(load.size());
  while (t < horizon) {
    if (load[static_cast<std::size_t>(t)] <= 0) {
      ++t;
      continue;
    }
    const int start = t;
    while (t < horizon && load[static_cast<std::size_t>(t)] > 0) ++t;
    periods.push_back({k, start, t});
  }
  return periods;
}

namespace {

IndicatorValue ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) return {Rational(0), false};
  return {Rational(num, den), true};
}

std::int64_t capacity_sum(const Instance& inst, ResourceId k, int from, int to) {
  std::int64_t sum = 0;
  const auto& r = inst.resource(k);
  for (int t = std::max(from, 0); t < std::min(to, inst.horizon); ++t) sum += r.capacity(t);
  return sum;
}

template <typename Work>
std::int64_t work_started_in(const Instance& inst, const Schedule& schedule, const ActivePeriod& period, Work work) {
  std::int64_t sum = 0;
  for (const auto& job : inst.jobs) {
    if (job.consumes(period.resource) <= 0) continue;
    const int s = schedule.start(job.id);
    if (period.start <= s && s <= period.last()) sum += work(job);
  }
  return sum;
}

template <typename PerPeriod>
IndicatorValue mean_over_periods(const Instance& inst, const Schedule& schedule, ResourceId k, PerPeriod per_period) {
  const auto periods = active_periods(inst, schedule, k);
  if (periods.empty()) return {Rational(0), false};
  Rational sum;
  bool defined = true;
  for (const auto& p : periods) {
    const auto v = per_period(p);
    sum += v.value;
    defined = defined && v.defined;
  }
  return {sum / Rational(static_cast<std::int64_t>(periods.size())), defined};
}

}  // namespace

IndicatorValue mrur(const Instance& inst, const Schedule& schedule, ResourceId k) {
  std::int64_t work = 0;
  for (const auto& job : inst.jobs) work += static_cast<std::int64_t>(job.duration) * job.consumes(k);
  return ratio(work, capacity_sum(inst, k, 0, makespan(inst, schedule)));
}

IndicatorValue pru(const Instance& inst, const Schedule& schedule, const ActivePeriod& period) {
  const auto work = work_started_in(inst, schedule, period, [&](const Job& job) {
    return static_cast<std::int64_t>(job.duration) * job.consumes(period.resource);
  });
  return ratio(work, capacity_sum(inst, period.resource, period.start, period.end));
}

IndicatorValue auau(const Instance& inst, const Schedule& schedule, ResourceId k) {
  return mean_over_periods(inst, schedule, k, [&](const ActivePeriod& p) { return pru(inst, schedule, p); });
}

IndicatorValue mur(const Instance& inst, const Schedule& schedule, ResourceId k) {
  std::int64_t busy = 0;
  for (const auto& job : inst.jobs) {
    if (job.consumes(k) > 0) busy += job.duration;
  }
  return ratio(busy, makespan(inst, schedule));
}

IndicatorValue auad(const Instance& inst, const Schedule& schedule, ResourceId k) {
  return mean_over_periods(inst, schedule, k, [&](const ActivePeriod& p) {
    const auto busy = work_started_in(inst, schedule, p, [](const Job& job) { return std::int64_t{job.duration}; });
    return ratio(busy, p.end - p.start);
  });
}

IndicatorValue evaluate_indicator(Indicator indicator, const Instance& inst, const Schedule& schedule, ResourceId k) {
  switch (indicator) {
    case Indicator::mrur:
      return mrur(inst, schedule, k);
    case Indicator::auau:
      return auau(inst, schedule, k);
    case Indicator::mur:
      return mur(inst, schedule, k);
    case Indicator::auad:
      return auad(inst, schedule, k);
  }
  throw std::invalid_argument("unknown indicator");
}

std::vector<ResourceScore> rank_resources(const Instance& inst, const Schedule& schedule, Indicator indicator) {
  std::vector<ResourceScore> scores;
  for (const auto& r : inst.resources) scores.push_back({r.id, evaluate_indicator(indicator, inst, schedule, r.id)});
  std::stable_sort(scores.begin(), scores.end(), [](const ResourceScore& a, const ResourceScore& b) {
    if (a.score.value != b.score.value) return a.score.value > b.score.value;
    return a.resource < b.resource;
  });
  return scores;
}

}  // namespace bottleneck
