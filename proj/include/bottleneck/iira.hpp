#pragma once

#include <string>
#include <vector>

#include "bottleneck/indicators.hpp"
#include "bottleneck/proposal.hpp"
#include "bottleneck/rational.hpp"
#include "bottleneck/solver.hpp"

namespace bottleneck {

/// Symmetric smoothing kernel. half_width 0 is the identity.
struct Kernel {
  enum class Family { uniform, triangular };
  Family family = Family::uniform;
  int half_width = 0;

  /// 2w + 1 non-negative weights summing to 1, centre at index w.
  std::vector<double> weights() const;
  std::string name() const;  // e.g. "uniform1", "triangular3"
  static Kernel parse(const std::string& name);
};

struct IiraParams {
  Indicator indicator = Indicator::mrur;
  Kernel kernel;
  int granularity = 1;
  int improvement_periods = 1;
  int iterations = 1;
  int capacity_step = 1;

  void check() const;  // throws std::invalid_argument
  std::string describe() const;
};

/// Utilization ratio of resource k per block of `granularity` periods;
/// ceil(T / G) entries, 0 where the block has no capacity.
std::vector<Rational> granular_load(const Instance& inst, const Schedule& schedule, ResourceId k, int granularity);

/// Same-length convolution of `load` with the kernel, zero-padded.
std::vector<double> improvement_potential(const std::vector<double>& load, const Kernel& kernel);

/// Indices of the `count` largest entries, ties broken by earliest index,
/// returned in ascending index order.
std::vector<int> select_blocks(const std::vector<double>& potential, int count);

/// Untargeted relaxation: each iteration raises the top-ranked resource by
/// `capacity_step` over the blocks with the highest improvement potential,
/// re-solves warm-started and accounts the consumed changes. `target` is
/// only used for metrics.
RelaxationRun run_iira(const Instance& inst, const Schedule& initial, const IiraParams& params, JobId target,
                       const SolveLimits& limits = {});

}  // namespace bottleneck
