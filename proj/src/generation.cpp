#include "bottleneck/generation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "bottleneck/json_io.hpp"

namespace bottleneck {

namespace {

// mt19937_64's output sequence is fixed by the standard; distributions are not.
int draw(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string alpha_text(double alpha) {
  std::ostringstream os;
  os << alpha;
  return os.str();
}

}  // namespace

std::string shift_name(Shift shift) {
  switch (shift) {
    case Shift::h8:
      return "8h";
    case Shift::h16:
      return "16h";
    case Shift::h24:
      return "24h";
  }
  return "?";
}

Shift parse_shift(const std::string& name) {
  if (name == "8" || name == "8h") return Shift::h8;
  if (name == "16" || name == "16h") return Shift::h16;
  if (name == "24" || name == "24h") return Shift::h24;
  throw std::invalid_argument("unknown shift '" + name + "' (expected 8h, 16h or 24h)");
}

std::array<int, kCapacityPeriod> shift_pattern(Shift shift, int capacity) {
  std::array<int, kCapacityPeriod> p{};
  for (int h = 0; h < kCapacityPeriod; ++h) {
    bool on = true;
    if (shift == Shift::h8) on = h >= 6 && h < 14;
    if (shift == Shift::h16) on = h >= 6 && h < 22;
    p[static_cast<std::size_t>(h)] = on ? capacity : 0;
  }
  return p;
}

std::vector<int> project_critical_paths(const Instance& inst) {
  const auto graph = precedence_graph(inst);
  std::vector<int> head(static_cast<std::size_t>(inst.job_count()), 0);  // longest path ending at j, j included
  for (JobId j : graph.topological_order) {
    int best = 0;
    for (JobId i : graph.preds(j)) best = std::max(best, head[static_cast<std::size_t>(i - 1)]);
    head[static_cast<std::size_t>(j - 1)] = best + inst.job(j).duration;
  }
  std::vector<int> out(head.size(), 0);
  for (JobId j = 1; j <= inst.job_count(); ++j) {
    if (graph.is_root(j)) out[static_cast<std::size_t>(j - 1)] = head[static_cast<std::size_t>(j - 1)];
  }
  return out;
}

int default_horizon(const Instance& inst) {
  long long total = 0;
  int latest_due = 0;
  for (const auto& job : inst.jobs) {
    total += job.duration;
    if (job.due_date) latest_due = std::max(latest_due, *job.due_date);
  }
  const long long span = total + latest_due;
  return static_cast<int>(kCapacityPeriod * ((span + kCapacityPeriod - 1) / kCapacityPeriod));
}

Instance apply_modifications(const RawNetwork& network, const ModificationConfig& config) {
  if (!(config.alpha > 0)) throw std::invalid_argument("due-date factor alpha must be positive");
  if (config.max_weight < 1) throw std::invalid_argument("max weight must be >= 1");
  const int n = network.job_count();
  const int m = static_cast<int>(network.capacities.size());
  const auto edges = to_inforest(network);

  std::vector<int> durations(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> requests(static_cast<std::size_t>(n));
  for (const auto& job : network.jobs) {
    durations[static_cast<std::size_t>(job.id - 1)] = job.duration;
    requests[static_cast<std::size_t>(job.id - 1)] = job.requests;
  }

  std::vector<bool> is_root(static_cast<std::size_t>(n), true);
  for (const auto& [i, j] : edges) is_root[static_cast<std::size_t>(i - 1)] = false;
  std::mt19937_64 rng(config.seed);
  std::vector<std::int64_t> weights(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < n; ++j) {
    if (is_root[static_cast<std::size_t>(j)]) weights[static_cast<std::size_t>(j)] = draw(rng, 1, config.max_weight);
  }

  std::vector<Resource> resources;
  for (int k = 0; k < m; ++k) {
    const Shift shift = static_cast<std::size_t>(k) < config.shifts.size() ? config.shifts[static_cast<std::size_t>(k)] : Shift::h24;
    Resource r;
    r.id = k + 1;
    r.base_pattern = shift_pattern(shift, network.capacities[static_cast<std::size_t>(k)]);
    resources.push_back(r);
  }

  for (;;) {
    Instance inst;
    inst.resources = resources;
    inst.precedences = edges;
    for (int j = 0; j < n; ++j) {
      Job job;
      job.id = j + 1;
      job.duration = durations[static_cast<std::size_t>(j)];
      job.consumption = requests[static_cast<std::size_t>(j)];
      job.consumption.resize(static_cast<std::size_t>(m), 0);
      inst.jobs.push_back(std::move(job));
    }
    const auto cp = project_critical_paths(inst);
    for (auto& job : inst.jobs) {
      if (!is_root[static_cast<std::size_t>(job.id - 1)]) continue;
      job.due_date = static_cast<int>(std::lround(config.alpha * cp[static_cast<std::size_t>(job.id - 1)]));
      job.weight = weights[static_cast<std::size_t>(job.id - 1)];
    }
    inst.horizon = default_horizon(inst);

    bool fits_capacity = true;
    for (const auto& job : inst.jobs) {
      for (int k = 0; k < m; ++k) {
        const auto& pattern = resources[static_cast<std::size_t>(k)].base_pattern;
        if (job.consumption[static_cast<std::size_t>(k)] > *std::max_element(pattern.begin(), pattern.end())) {
          fits_capacity = false;
        }
      }
    }
    if (fits_capacity && solve_heuristic(inst, config.limits).feasible) return inst;

    if (std::any_of(durations.begin(), durations.end(), [](int d) { return d > 1; })) {
      for (auto& d : durations) d = (d + 1) / 2;
      continue;
    }
    bool reduced = false;
    for (auto& q : requests) {
      for (auto& v : q) {
        if (v > 1) {
          --v;
          reduced = true;
        }
      }
    }
    if (!reduced) throw GenerationError("network stays unschedulable after scaling durations and consumptions");
  }
}

std::vector<GroupRecipe> BenchmarkConfig::default_groups() {
  std::vector<GroupRecipe> groups;
  for (const char* family : {"wide", "deep"}) {
    for (double alpha : {0.8, 1.0}) {
      for (ShiftMix mix : {ShiftMix::all_24h, ShiftMix::mixed}) groups.push_back({family, alpha, mix});
    }
  }
  return groups;
}

std::vector<GeneratedInstance> generate_benchmark(const BenchmarkConfig& config) {
  std::vector<GeneratedInstance> out;
  for (std::size_t g = 0; g < config.groups.size(); ++g) {
    const auto& recipe = config.groups[g];
    const auto dir = config.source_dir / recipe.family;
    std::vector<std::filesystem::path> files;
    if (std::filesystem::is_directory(dir)) {
      for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() == ".sm") files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (static_cast<int>(files.size()) < config.instances_per_group) {
      throw GenerationError("group " + std::to_string(g + 1) + " needs " + std::to_string(config.instances_per_group) +
                            " networks in " + dir.string() + ", found " + std::to_string(files.size()));
    }
    for (int i = 0; i < config.instances_per_group; ++i) {
      const auto& file = files[static_cast<std::size_t>(i)];
      RawNetwork net;
      try {
        net = parse_psplib(read_text_file(file));
      } catch (const ParseError& e) {
        throw GenerationError(file.string() + ": " + e.what());
      }
      const std::uint64_t stream = g * 64 + static_cast<std::uint64_t>(i);
      std::mt19937_64 rng(mix_seed(config.seed, stream));

      ModificationConfig mod;
      mod.alpha = config.alpha_override.value_or(recipe.alpha);
      mod.seed = rng();
      const ShiftMix mix = config.shift_override.value_or(recipe.shifts);
      for (std::size_t k = 0; k < net.capacities.size(); ++k) {
        mod.shifts.push_back(mix == ShiftMix::all_24h ? Shift::h24 : static_cast<Shift>(draw(rng, 0, 2)));
      }
      GeneratedInstance gen;
      gen.name = "g" + std::to_string(g + 1) + "_i" + std::to_string(i + 1);
      gen.source = file.filename().string();
      gen.alpha = mod.alpha;
      for (Shift sh : mod.shifts) gen.shifts += (gen.shifts.empty() ? "" : "/") + shift_name(sh);
      try {
        gen.instance = apply_modifications(net, mod);
      } catch (const GenerationError& e) {
        throw GenerationError(gen.name + " (" + gen.source + "): " + e.what());
      }
      out.push_back(std::move(gen));
    }
  }
  return out;
}

std::vector<std::filesystem::path> write_benchmark(const std::vector<GeneratedInstance>& instances,
                                                   const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  std::ostringstream manifest;
  manifest << "name,source,alpha,shifts,jobs,resources,horizon\n";
  for (const auto& gen : instances) {
    const auto path = out_dir / (gen.name + ".json");
    save_instance(path, gen.instance);
    written.push_back(path);
    manifest << gen.name << "," << gen.source << "," << alpha_text(gen.alpha) << "," << gen.shifts << ","
             << gen.instance.job_count() << ","
             << gen.instance.resource_count() << "," << gen.instance.horizon << "\n";
  }
  const auto manifest_path = out_dir / "manifest.csv";
  write_text_file(manifest_path, manifest.str());
  written.push_back(manifest_path);
  return written;
}

}  // namespace bottleneck
