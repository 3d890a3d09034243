#include "bottleneck/accounting.hpp"

#include <algorithm>
#include <stdexcept>

namespace bottleneck {

namespace {

void require_same_shape(const Instance& a, const Instance& b) {
  if (a.job_count() != b.job_count() || a.resource_count() != b.resource_count() || a.horizon != b.horizon) {
    throw std::invalid_argument("instances differ in jobs, resources or horizon");
  }
}

}  // namespace

Instance reduce_capacity_changes(const Instance& original, const Instance& modified, const Schedule& schedule) {
  require_same_shape(original, modified);
  const auto report = validate(modified, schedule);
  if (!report.feasible()) {
    throw std::logic_error("reduction needs a schedule feasible for the modified instance: " +
                           report.violations.front().describe());
  }
  for (const auto& r : original.resources) {
    for (int t = 0; t < original.horizon; ++t) {
      if (modified.capacity(r.id, t) < r.capacity(t)) {
        throw std::logic_error("modified capacity of resource " + std::to_string(r.id) +
                               " lies below the original at t=" + std::to_string(t));
      }
    }
  }
  Instance reduced = original;
  for (auto& r : reduced.resources) {
    const auto load = consumption_timeline(original, schedule, r.id);
    for (int t = 0; t < original.horizon; ++t) {
      const int excess = load[static_cast<std::size_t>(t)] - original.capacity(r.id, t);
      if (excess > 0) r.adjust(t, excess);
    }
  }
  return reduced;
}

std::vector<Rectangle> slab_decomposition(const std::vector<int>& profile) {
  const int top = profile.empty() ? 0 : *std::max_element(profile.begin(), profile.end());
  std::vector<Rectangle> rects;
  const int len = static_cast<int>(profile.size());
  for (int level = 1; level <= top; ++level) {
    int t = 0;
    while (t < len) {
      if (profile[static_cast<std::size_t>(t)] < level) {
        ++t;
        continue;
      }
      const int start = t;
      while (t < len && profile[static_cast<std::size_t>(t)] >= level) ++t;
      // Stack onto an identical run from the level below when one exists.
      auto same = std::find_if(rects.begin(), rects.end(),
                               [&](const Rectangle& r) { return r.start == start && r.end == t; });
      if (same != rects.end()) {
        ++same->height;
      } else {
        rects.push_back({start, t, 1});
      }
    }
  }
  return rects;
}

CapacityChanges extract_changes(const Instance& original, const Instance& reduced, const Schedule& schedule) {
  require_same_shape(original, reduced);
  const int horizon = original.horizon;
  const int m = original.resource_count();

  // slack[k][t] = original capacity minus load, debited by migrations.
  std::vector<std::vector<int>> slack(static_cast<std::size_t>(m));
  for (ResourceId k = 1; k <= m; ++k) {
    const auto load = consumption_timeline(original, schedule, k);
    auto& row = slack[static_cast<std::size_t>(k - 1)];
    row.resize(static_cast<std::size_t>(horizon));
    for (int t = 0; t < horizon; ++t) row[static_cast<std::size_t>(t)] = original.capacity(k, t) - load[static_cast<std::size_t>(t)];
  }

  CapacityChanges changes;
  for (ResourceId k = 1; k <= m; ++k) {
    std::vector<int> diff(static_cast<std::size_t>(horizon));
    for (int t = 0; t < horizon; ++t) {
      const int d = reduced.capacity(k, t) - original.capacity(k, t);
      if (d < 0) throw std::logic_error("reduced instance lies below the original capacity");
      diff[static_cast<std::size_t>(t)] = d;
    }
    for (const auto& rect : slab_decomposition(diff)) {
      ResourceId donor = 0;
      int donor_slack = 0;
      for (ResourceId other = 1; other <= m; ++other) {
        if (other == k) continue;
        const auto& row = slack[static_cast<std::size_t>(other - 1)];
        const int s = *std::min_element(row.begin() + rect.start, row.begin() + rect.end);
        if (s >= rect.height && s > donor_slack) {
          donor = other;
          donor_slack = s;
        }
      }
      if (donor != 0) {
        auto& row = slack[static_cast<std::size_t>(donor - 1)];
        for (int t = rect.start; t < rect.end; ++t) row[static_cast<std::size_t>(t)] -= rect.height;
        changes.migrations.push_back({donor, k, rect.start, rect.end, rect.height});
      } else {
        changes.additions.push_back({k, rect.start, rect.end, rect.height});
      }
    }
  }
  return changes;
}

Instance apply_changes(const Instance& original, const CapacityChanges& changes) {
  Instance out = original;
  for (const auto& a : changes.additions) {
    for (int t = a.start; t < a.end; ++t) out.resource(a.resource).adjust(t, a.amount);
  }
  for (const auto& mig : changes.migrations) {
    for (int t = mig.start; t < mig.end; ++t) {
      out.resource(mig.from).adjust(t, -mig.amount);
      out.resource(mig.to).adjust(t, mig.amount);
    }
  }
  return out;
}

int inflow(const CapacityChanges& changes, ResourceId k, int t) {
  int sum = 0;
  for (const auto& a : changes.additions) {
    if (a.resource == k && a.start <= t && t < a.end) sum += a.amount;
  }
  for (const auto& mig : changes.migrations) {
    if (mig.to == k && mig.start <= t && t < mig.end) sum += mig.amount;
  }
  return sum;
}

int outflow(const CapacityChanges& changes, ResourceId k, int t) {
  int sum = 0;
  for (const auto& mig : changes.migrations) {
    if (mig.from == k && mig.start <= t && t < mig.end) sum += mig.amount;
  }
  return sum;
}

}  // namespace bottleneck
