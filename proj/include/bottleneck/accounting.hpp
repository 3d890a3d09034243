#pragma once

#include <vector>

#include "bottleneck/instance.hpp"

namespace bottleneck {

/// Capacity of `resource` raised by `amount` over [start, end).
struct CapacityAddition {
  ResourceId resource = 0;
  int start = 0;
  int end = 0;
  int amount = 0;
  friend bool operator==(const CapacityAddition&, const CapacityAddition&) = default;
};

/// `amount` of capacity moved from `from` to `to` over [start, end).
struct CapacityMigration {
  ResourceId from = 0;
  ResourceId to = 0;
  int start = 0;
  int end = 0;
  int amount = 0;
  friend bool operator==(const CapacityMigration&, const CapacityMigration&) = default;
};

struct CapacityChanges {
  std::vector<CapacityAddition> additions;
  std::vector<CapacityMigration> migrations;
  bool empty() const { return additions.empty() && migrations.empty(); }
};

/// Keeps only the extra capacity the schedule actually consumes:
/// reduced c_k(t) = original c_k(t) + max(0, load_k(t) - original c_k(t)).
/// Throws std::logic_error if the schedule is infeasible for `modified` or
/// `modified` lies below `original` anywhere.
Instance reduce_capacity_changes(const Instance& original, const Instance& modified, const Schedule& schedule);

/// Decomposes reduced - original into rectangles (unit slabs per level,
/// identical runs stacked) and turns each into a migration when a donor
/// resource has enough slack over the whole run, otherwise an addition.
/// Donor slack is debited as it is used.
CapacityChanges extract_changes(const Instance& original, const Instance& reduced, const Schedule& schedule);

/// Per-resource rectangles (start, end, height) of a non-negative profile.
struct Rectangle {
  int start = 0;
  int end = 0;
  int height = 0;
  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};
std::vector<Rectangle> slab_decomposition(const std::vector<int>& profile);

/// Original capacities with every addition and migration applied.
Instance apply_changes(const Instance& original, const CapacityChanges& changes);

/// Capacity entering resource k at t through additions and incoming migrations.
int inflow(const CapacityChanges& changes, ResourceId k, int t);
/// Capacity leaving resource k at t through outgoing migrations.
int outflow(const CapacityChanges& changes, ResourceId k, int t);

}  // namespace bottleneck
