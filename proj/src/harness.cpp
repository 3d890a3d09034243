#include "bottleneck/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

namespace bottleneck {

std::string algorithm_name(Algorithm algorithm) { return algorithm == Algorithm::iira ? "IIRA" : "SSIRA"; }

Algorithm parse_algorithm(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "iira") return Algorithm::iira;
  if (lower == "ssira") return Algorithm::ssira;
  throw std::invalid_argument("unknown algorithm '" + name + "' (expected iira or ssira)");
}

namespace {

struct IiraAxes {
  std::vector<Indicator> indicators{Indicator::mrur, Indicator::auau};
  std::vector<Kernel> kernels;
  std::vector<int> granularities{1, 4, 8};
  std::vector<int> improvement_periods{1, 3};
  std::vector<int> iterations{1, 3};
  std::vector<int> capacity_steps{1, 2};

  IiraAxes() {
    for (auto family : {Kernel::Family::uniform, Kernel::Family::triangular}) {
      for (int w = 1; w <= 3; ++w) kernels.push_back(Kernel{family, w});
    }
  }

  std::vector<IiraParams> expand() const {
    std::vector<IiraParams> out;
    for (auto ind : indicators)
      for (const auto& kernel : kernels)
        for (int g : granularities)
          for (int p : improvement_periods)
            for (int it : iterations)
              for (int step : capacity_steps) {
                IiraParams params{ind, kernel, g, p, it, step};
                params.check();
                out.push_back(params);
              }
    return out;
  }
};

struct SsiraAxes {
  std::vector<SortKey> keys{SortKey::start, SortKey::start_shift};
  std::vector<int> interval_limits{1, 2, 4};
  std::vector<int> iterations{1, 2, 3, 4, 5, 6};

  std::vector<SsiraParams> expand() const {
    std::vector<SsiraParams> out;
    for (auto key : keys)
      for (int limit : interval_limits)
        for (int it : iterations) {
          SsiraParams params{it, limit, key};
          params.check();
          out.push_back(params);
        }
    return out;
  }
};

IiraAxes reduced_iira() {
  IiraAxes a;
  a.kernels = {Kernel{Kernel::Family::uniform, 1}, Kernel{Kernel::Family::triangular, 2}};
  a.improvement_periods = {3};
  a.iterations = {2};
  return a;
}

SsiraAxes reduced_ssira() {
  SsiraAxes a;
  a.iterations = {1, 3};
  return a;
}

template <typename T, typename F>
std::vector<T> list_of(const Json& doc, const char* field, F convert, std::vector<T> fallback) {
  if (!doc.contains(field)) return fallback;
  const auto& arr = doc.at(field);
  if (!arr.is_array() || arr.empty()) throw std::invalid_argument(std::string("grid field '") + field + "' must be a non-empty array");
  std::vector<T> out;
  for (const auto& v : arr) out.push_back(convert(v));
  return out;
}

int as_int(const Json& v) {
  if (!v.is_number_integer()) throw std::invalid_argument("grid values must be integers");
  return v.get<int>();
}

std::string as_string(const Json& v) {
  if (!v.is_string()) throw std::invalid_argument("grid names must be strings");
  return v.get<std::string>();
}

Json iira_json(const IiraAxes& a) {
  Json doc;
  doc["indicators"] = Json::array();
  for (auto i : a.indicators) doc["indicators"].push_back(std::string(indicator_name(i)));
  doc["kernels"] = Json::array();
  for (const auto& k : a.kernels) doc["kernels"].push_back(k.name());
  doc["granularities"] = a.granularities;
  doc["improvement_periods"] = a.improvement_periods;
  doc["iterations"] = a.iterations;
  doc["capacity_steps"] = a.capacity_steps;
  return doc;
}

Json ssira_json(const SsiraAxes& a) {
  Json doc;
  doc["keys"] = Json::array();
  for (auto k : a.keys) doc["keys"].push_back(sort_key_name(k));
  doc["interval_limits"] = a.interval_limits;
  doc["iterations"] = a.iterations;
  return doc;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

// Ordering used for the best combination: larger Δtardiness, smaller ΔS, lower combo.
bool better(const EvaluationRecord& a, const EvaluationRecord& b) {
  if (a.delta_tardiness != b.delta_tardiness) return a.delta_tardiness > b.delta_tardiness;
  if (a.delta_s != b.delta_s) return a.delta_s < b.delta_s;
  return a.combo < b.combo;
}

std::vector<std::string> instance_names(const std::vector<EvaluationRecord>& records) {
  std::vector<std::string> names;
  for (const auto& r : records) names.push_back(r.instance);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

}  // namespace

Json iira_params_to_json(const IiraParams& p) {
  return Json{{"indicator", std::string(indicator_name(p.indicator))},
              {"kernel", p.kernel.name()},
              {"granularity", p.granularity},
              {"improvement_periods", p.improvement_periods},
              {"iterations", p.iterations},
              {"capacity_step", p.capacity_step}};
}

IiraParams iira_params_from_json(const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("params must be a JSON object");
  IiraParams p;
  for (const auto& [field, value] : doc.items()) {
    if (field == "indicator") p.indicator = parse_indicator(as_string(value));
    else if (field == "kernel") p.kernel = Kernel::parse(as_string(value));
    else if (field == "granularity") p.granularity = as_int(value);
    else if (field == "improvement_periods") p.improvement_periods = as_int(value);
    else if (field == "iterations") p.iterations = as_int(value);
    else if (field == "capacity_step") p.capacity_step = as_int(value);
    else throw std::invalid_argument("unknown IIRA parameter '" + field + "'");
  }
  p.check();
  return p;
}

Json ssira_params_to_json(const SsiraParams& p) {
  return Json{{"key", sort_key_name(p.key)}, {"interval_limit", p.interval_limit}, {"iterations", p.iterations}};
}

SsiraParams ssira_params_from_json(const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("params must be a JSON object");
  SsiraParams p;
  for (const auto& [field, value] : doc.items()) {
    if (field == "key") p.key = parse_sort_key(as_string(value));
    else if (field == "interval_limit") p.interval_limit = as_int(value);
    else if (field == "iterations") p.iterations = as_int(value);
    else throw std::invalid_argument("unknown SSIRA parameter '" + field + "'");
  }
  p.check();
  return p;
}

GridConfig GridConfig::full() {
  GridConfig g;
  g.iira = IiraAxes{}.expand();
  g.ssira = SsiraAxes{}.expand();
  return g;
}

GridConfig GridConfig::reduced() {
  GridConfig g;
  g.iira = reduced_iira().expand();
  g.ssira = reduced_ssira().expand();
  return g;
}

GridConfig grid_from_json(const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("grid config must be a JSON object");
  GridConfig g = GridConfig::full();
  if (doc.contains("iira")) {
    const auto& d = doc.at("iira");
    IiraAxes a;
    a.indicators = list_of<Indicator>(d, "indicators", [](const Json& v) { return parse_indicator(as_string(v)); }, a.indicators);
    a.kernels = list_of<Kernel>(d, "kernels", [](const Json& v) { return Kernel::parse(as_string(v)); }, a.kernels);
    a.granularities = list_of<int>(d, "granularities", as_int, a.granularities);
    a.improvement_periods = list_of<int>(d, "improvement_periods", as_int, a.improvement_periods);
    a.iterations = list_of<int>(d, "iterations", as_int, a.iterations);
    a.capacity_steps = list_of<int>(d, "capacity_steps", as_int, a.capacity_steps);
    g.iira = a.expand();
  }
  if (doc.contains("ssira")) {
    const auto& d = doc.at("ssira");
    SsiraAxes a;
    a.keys = list_of<SortKey>(d, "keys", [](const Json& v) { return parse_sort_key(as_string(v)); }, a.keys);
    a.interval_limits = list_of<int>(d, "interval_limits", as_int, a.interval_limits);
    a.iterations = list_of<int>(d, "iterations", as_int, a.iterations);
    g.ssira = a.expand();
  }
  if (doc.contains("solver")) {
    const auto& s = doc.at("solver");
    if (s.contains("time_limit")) g.limits.time_limit = s.at("time_limit").get<double>();
    if (s.contains("restarts")) g.limits.restarts = as_int(s.at("restarts"));
    if (s.contains("seed")) g.limits.seed = s.at("seed").get<std::uint64_t>();
    if (!(g.limits.time_limit > 0)) throw std::invalid_argument("solver time_limit must be positive");
    if (g.limits.restarts < 0) throw std::invalid_argument("solver restarts must be non-negative");
  }
  return g;
}

Json grid_to_json_template(const std::string& which) {
  const bool reduced = which == "reduced";
  if (!reduced && which != "full") throw std::invalid_argument("unknown grid '" + which + "'");
  const GridConfig g = reduced ? GridConfig::reduced() : GridConfig::full();
  Json doc;
  doc["iira"] = iira_json(reduced ? reduced_iira() : IiraAxes{});
  doc["ssira"] = ssira_json(reduced ? reduced_ssira() : SsiraAxes{});
  doc["solver"] = {{"time_limit", g.limits.time_limit}, {"restarts", g.limits.restarts}};
  return doc;
}

std::vector<NamedInstance> load_instance_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw std::invalid_argument("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<NamedInstance> out;
  for (const auto& f : files) out.push_back({f.stem().string(), load_instance(f)});
  return out;
}

std::vector<EvaluationRecord> run_grid(const std::vector<NamedInstance>& instances, const GridConfig& grid,
                                       const EvaluationOptions& options) {
  SolveLimits limits = grid.limits;
  if (options.seed) limits.seed = *options.seed;
  const int workers = std::max(1, options.jobs);

  // Baselines first; every run of an instance shares them.
  struct Baseline {
    Schedule schedule;
    JobId target = 0;
    int tardiness = 0;
    std::string error;
  };
  std::vector<Baseline> baselines(instances.size());
  auto parallel_for = [workers](std::size_t count, auto&& body) {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min<int>(workers, static_cast<int>(count)); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) body(i);
      });
    }
    for (auto& t : pool) t.join();
  };
  parallel_for(instances.size(), [&](std::size_t i) {
    auto& b = baselines[i];
    try {
      const auto solved = solve_heuristic(instances[i].instance, limits);
      if (!solved.feasible) throw std::runtime_error("no feasible baseline schedule");
      b.schedule = solved.schedule;
      b.target = default_target(instances[i].instance, b.schedule);
      b.tardiness = tardiness(instances[i].instance, b.schedule, b.target);
    } catch (const std::exception& e) {
      b.error = e.what();
    }
  });

  std::vector<EvaluationRecord> records;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    auto add = [&](Algorithm alg, int combo, std::string params, std::string key) {
      EvaluationRecord r;
      r.instance = instances[i].name;
      r.algorithm = alg;
      r.combo = combo;
      r.params = std::move(params);
      r.key = std::move(key);
      r.target = baselines[i].target;
      r.baseline_tardiness = baselines[i].tardiness;
      r.error = baselines[i].error;
      records.push_back(std::move(r));
    };
    if (options.run_iira) {
      for (std::size_t c = 0; c < grid.iira.size(); ++c) {
        add(Algorithm::iira, static_cast<int>(c), grid.iira[c].describe(), std::string(indicator_name(grid.iira[c].indicator)));
      }
    }
    if (options.run_ssira) {
      for (std::size_t c = 0; c < grid.ssira.size(); ++c) {
        add(Algorithm::ssira, static_cast<int>(c), grid.ssira[c].describe(), sort_key_name(grid.ssira[c].key));
      }
    }
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < instances.size(); ++i) index[instances[i].name] = i;

  parallel_for(records.size(), [&](std::size_t n) {
    auto& r = records[n];
    if (!r.error.empty()) return;
    const std::size_t i = index.at(r.instance);
    const auto& inst = instances[i].instance;
    const auto& base = baselines[i].schedule;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const RelaxationRun run = r.algorithm == Algorithm::iira
                                    ? run_iira(inst, base, grid.iira[static_cast<std::size_t>(r.combo)], r.target, limits)
                                    : run_ssira(inst, base, grid.ssira[static_cast<std::size_t>(r.combo)], r.target, limits);
      r.delta_tardiness = run.final_proposal.metrics.delta_tardiness;
      r.delta_s = run.final_proposal.metrics.delta_s;
      r.iterations = static_cast<int>(run.iterations.size());
      if (options.on_proposal) {
        for (const auto& prop : run.iterations) options.on_proposal(inst, base, prop);
      }
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  });

  std::stable_sort(records.begin(), records.end(), [](const EvaluationRecord& a, const EvaluationRecord& b) {
    if (a.instance != b.instance) return a.instance < b.instance;
    if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
    return a.combo < b.combo;
  });
  return records;
}

std::optional<EvaluationRecord> best_record(const std::vector<EvaluationRecord>& records, const std::string& instance,
                                            Algorithm algorithm) {
  std::optional<EvaluationRecord> best;
  for (const auto& r : records) {
    if (r.instance != instance || r.algorithm != algorithm || !r.error.empty()) continue;
    if (!best || better(r, *best)) best = r;
  }
  return best;
}

Summary summarize(const std::vector<EvaluationRecord>& records) {
  Summary s;
  const auto names = instance_names(records);
  s.instances = static_cast<int>(names.size());
  for (const auto& name : names) {
    const auto a = best_record(records, name, Algorithm::iira);
    const auto b = best_record(records, name, Algorithm::ssira);
    const int da = a ? a->delta_tardiness : 0;
    const int db = b ? b->delta_tardiness : 0;
    const bool ia = da > 0;
    const bool ib = db > 0;
    s.iira.improving += ia;
    s.ssira.improving += ib;
    s.iira.unique += ia && !ib;
    s.ssira.unique += ib && !ia;
    s.iira.best += ia && da >= db;
    s.ssira.best += ib && db >= da;
  }
  return s;
}

std::string records_csv(const std::vector<EvaluationRecord>& records) {
  std::ostringstream os;
  os << "instance,algorithm,combo,params,key,target,baseline_tardiness,delta_tardiness,delta_s,iterations,status\n";
  for (const auto& r : records) {
    os << csv_field(r.instance) << ',' << algorithm_name(r.algorithm) << ',' << r.combo << ',' << csv_field(r.params)
       << ',' << r.key << ',' << r.target << ',' << r.baseline_tardiness << ',' << r.delta_tardiness << ','
       << r.delta_s << ',' << r.iterations << ',' << csv_field(r.error.empty() ? "ok" : "error: " + r.error) << '\n';
  }
  return os.str();
}

std::string timings_csv(const std::vector<EvaluationRecord>& records) {
  std::ostringstream os;
  os << "instance,algorithm,combo,wall_seconds\n";
  for (const auto& r : records) {
    os << csv_field(r.instance) << ',' << algorithm_name(r.algorithm) << ',' << r.combo << ',' << fixed(r.wall_seconds, 4)
       << '\n';
  }
  return os.str();
}

std::string plotdata_csv(const std::vector<EvaluationRecord>& records) {
  std::map<std::tuple<std::string, Algorithm, std::string>, EvaluationRecord> best;
  for (const auto& r : records) {
    if (!r.error.empty()) continue;
    const auto key = std::make_tuple(r.instance, r.algorithm, r.key);
    auto it = best.find(key);
    if (it == best.end() || better(r, it->second)) best[key] = r;
  }
  std::ostringstream os;
  os << "instance,algorithm,key,combo,params,delta_s,delta_tardiness\n";
  for (const auto& [k, r] : best) {
    os << csv_field(r.instance) << ',' << algorithm_name(r.algorithm) << ',' << r.key << ',' << r.combo << ','
       << csv_field(r.params) << ',' << r.delta_s << ',' << r.delta_tardiness << '\n';
  }
  return os.str();
}

std::string summary_text(const Summary& s) {
  auto cell = [&](int count) {
    const double pct = s.instances == 0 ? 0.0 : 100.0 * count / s.instances;
    return std::to_string(count) + " (" + fixed(pct, 1) + "%)";
  };
  auto pad = [](std::string text, std::size_t width) {
    text.resize(std::max(width, text.size()), ' ');
    return text;
  };
  std::ostringstream os;
  os << "Improving solutions found for " << s.instances << " instances\n";
  os << pad("", 12) << pad("IIRA", 16) << "SSIRA\n";
  os << pad("Improving", 12) << pad(cell(s.iira.improving), 16) << cell(s.ssira.improving) << '\n';
  os << pad("Unique", 12) << pad(cell(s.iira.unique), 16) << cell(s.ssira.unique) << '\n';
  os << pad("Best", 12) << pad(cell(s.iira.best), 16) << cell(s.ssira.best) << '\n';
  return os.str();
}

void write_outputs(const std::vector<EvaluationRecord>& records, const std::filesystem::path& out_dir) {
  write_text_file(out_dir / "records.csv", records_csv(records));
  write_text_file(out_dir / "summary.txt", summary_text(summarize(records)));
  write_text_file(out_dir / "plotdata.csv", plotdata_csv(records));
  write_text_file(out_dir / "timings.csv", timings_csv(records));
}

}  // namespace bottleneck
