#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bottleneck/instance.hpp"
#include "bottleneck/rational.hpp"

namespace bottleneck {

/// Maximal run of strictly positive load on one resource, half-open [start, end).
struct ActivePeriod {
  ResourceId resource = 0;
  int start = 0;
  int end = 0;

  int last() const { return end - 1; }  // inclusive end
  friend bool operator==(const ActivePeriod&, const ActivePeriod&) = default;
};

/// Indicator value; `defined` is false when the denominator vanished (value is then 0).
struct IndicatorValue {
  Rational value;
  bool defined = true;
};

enum class Indicator { mrur, auau, mur, auad };

std::string_view indicator_name(Indicator indicator);
/// Accepts "mrur", "auau", "mur", "auad" (case-insensitive).
Indicator parse_indicator(std::string_view name);

std::vector<ActivePeriod> active_periods(const Instance& inst, const Schedule& schedule, ResourceId k);

/// Consumed capacity-time over available capacity-time in [0, C_max).
IndicatorValue mrur(const Instance& inst, const Schedule& schedule, ResourceId k);

/// Period utilization: jobs binned by start time into the period, over the
/// capacity available during the period.
IndicatorValue pru(const Instance& inst, const Schedule& schedule, const ActivePeriod& period);

/// Mean PRU over the active periods of k.
IndicatorValue auau(const Instance& inst, const Schedule& schedule, ResourceId k);

/// Job-shop machine utilization: busy job-time of k over C_max, ignoring
/// capacity levels and consumption amounts.
IndicatorValue mur(const Instance& inst, const Schedule& schedule, ResourceId k);

/// Job-shop active-period indicator: mean over active periods of the busy
/// job-time started in the period over the period length.
IndicatorValue auad(const Instance& inst, const Schedule& schedule, ResourceId k);

IndicatorValue evaluate_indicator(Indicator indicator, const Instance& inst, const Schedule& schedule, ResourceId k);

struct ResourceScore {
  ResourceId resource = 0;
  IndicatorValue score;
};

/// Descending by score, ties by lowest resource id.
std::vector<ResourceScore> rank_resources(const Instance& inst, const Schedule& schedule, Indicator indicator);

}  // namespace bottleneck
