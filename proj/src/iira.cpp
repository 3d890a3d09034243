#include "bottleneck/iira.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bottleneck {

std::vector<double> Kernel::weights() const {
  if (half_width < 0) throw std::invalid_argument("kernel half-width must be non-negative");
  const int w = half_width;
  std::vector<double> out(static_cast<std::size_t>(2 * w + 1));
  for (int o = -w; o <= w; ++o) {
    out[static_cast<std::size_t>(o + w)] =
        family == Family::uniform ? 1.0 : static_cast<double>(w + 1 - std::abs(o));
  }
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  for (auto& v : out) v /= total;
  return out;
}

std::string Kernel::name() const {
  return (family == Family::uniform ? "uniform" : "triangular") + std::to_string(half_width);
}

Kernel Kernel::parse(const std::string& name) {
  Kernel k;
  std::string digits;
  if (name == "identity") return k;
  if (name.rfind("uniform", 0) == 0) {
    k.family = Family::uniform;
    digits = name.substr(7);
  } else if (name.rfind("triangular", 0) == 0) {
    k.family = Family::triangular;
    digits = name.substr(10);
  } else {
    throw std::invalid_argument("unknown kernel '" + name + "'");
  }
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
    throw std::invalid_argument("kernel '" + name + "' needs a half-width suffix");
  }
  k.half_width = std::stoi(digits);
  return k;
}

void IiraParams::check() const {
  if (indicator != Indicator::mrur && indicator != Indicator::auau) {
    throw std::invalid_argument("relaxation indicator must be MRUR or AUAU");
  }
  if (kernel.half_width < 0) throw std::invalid_argument("kernel half-width must be >= 0");
  if (granularity < 1) throw std::invalid_argument("granularity must be >= 1");
  if (improvement_periods < 1) throw std::invalid_argument("improvement periods limit must be >= 1");
  if (iterations < 1) throw std::invalid_argument("iterations limit must be >= 1");
  if (capacity_step < 1) throw std::invalid_argument("capacity improvement must be >= 1");
}

std::string IiraParams::describe() const {
  std::ostringstream os;
  os << "I=" << indicator_name(indicator) << " C=" << kernel.name() << " G=" << granularity
     << " P=" << improvement_periods << " It=" << iterations << " D=" << capacity_step;
  return os.str();
}

std::vector<Rational> granular_load(const Instance& inst, const Schedule& schedule, ResourceId k, int granularity) {
  if (granularity < 1) throw std::invalid_argument("granularity must be >= 1");
  const auto load = consumption_timeline(inst, schedule, k);
  const int blocks = (inst.horizon + granularity - 1) / granularity;
  std::vector<Rational> out(static_cast<std::size_t>(blocks));
  for (int b = 0; b < blocks; ++b) {
    std::int64_t used = 0;
    std::int64_t available = 0;
    for (int t = b * granularity; t < std::min((b + 1) * granularity, inst.horizon); ++t) {
      used += load[static_cast<std::size_t>(t)];
      available += inst.capacity(k, t);
    }
    out[static_cast<std::size_t>(b)] = available == 0 ? Rational(0) : Rational(used, available);
  }
  return out;
}

std::vector<double> improvement_potential(const std::vector<double>& load, const Kernel& kernel) {
  const auto weights = kernel.weights();
  const int w = kernel.half_width;
  const int n = static_cast<int>(load.size());
  std::vector<double> out(load.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int o = -w; o <= w; ++o) {
      const int src = i - o;
      if (src >= 0 && src < n) acc += weights[static_cast<std::size_t>(o + w)] * load[static_cast<std::size_t>(src)];
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

std::vector<int> select_blocks(const std::vector<double>& potential, int count) {
  // Quantize so that mathematically equal potentials tie exactly.
  std::vector<long long> key(potential.size());
  for (std::size_t i = 0; i < potential.size(); ++i) key[i] = std::llround(potential[i] * 1e9);
  std::vector<int> idx(potential.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return key[static_cast<std::size_t>(a)] > key[static_cast<std::size_t>(b)];
  });
  idx.resize(std::min(idx.size(), static_cast<std::size_t>(std::max(count, 0))));
  std::sort(idx.begin(), idx.end());
  return idx;
}

RelaxationRun run_iira(const Instance& inst, const Schedule& initial, const IiraParams& params, JobId target,
                       const SolveLimits& limits) {
  params.check();
  if (const auto report = validate(inst, initial); !report.feasible()) {
    throw std::invalid_argument("initial schedule is infeasible: " + report.violations.front().describe());
  }

  RelaxationRun run;
  run.final_proposal = identity_proposal(inst, initial);
  Instance working = inst;
  Schedule current = initial;

  for (int iteration = 1; iteration <= params.iterations; ++iteration) {
    const auto ranking = rank_resources(working, current, params.indicator);
    if (ranking.empty()) break;
    const ResourceId bottleneck = ranking.front().resource;

    const auto ratios = granular_load(working, current, bottleneck, params.granularity);
    std::vector<double> load(ratios.size());
    std::transform(ratios.begin(), ratios.end(), load.begin(), [](const Rational& r) { return r.to_double(); });
    const auto potential = improvement_potential(load, params.kernel);

    for (int block : select_blocks(potential, params.improvement_periods)) {
      const int from = block * params.granularity;
      const int to = std::min(from + params.granularity, working.horizon);
      for (int t = from; t < to; ++t) working.resource(bottleneck).adjust(t, params.capacity_step);
    }

    // Capacities only grew, so the previous schedule is a valid warm start.
    const auto solved = solve_heuristic(working, limits, current);
    if (!solved.feasible) throw std::logic_error("re-solve failed after a capacity increase");
    current = solved.schedule;

    run.iterations.push_back(account_iteration(inst, initial, working, current, target, iteration));
    run.final_proposal = run.iterations.back();
  }
  return run;
}

}  // namespace bottleneck
