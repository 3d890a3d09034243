#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "bottleneck/generation.hpp"
#include "bottleneck/harness.hpp"
#include "bottleneck/iira.hpp"
#include "bottleneck/indicators.hpp"
#include "bottleneck/json_io.hpp"
#include "bottleneck/psplib.hpp"
#include "bottleneck/service.hpp"
#include "bottleneck/solver.hpp"
#include "bottleneck/ssira.hpp"

using namespace bottleneck;

namespace {

void emit(const std::string& text, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    write_text_file(output, text);
  }
}

std::vector<Shift> parse_shift_list(const std::string& text) {
  std::vector<Shift> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_shift(item));
  return out;
}

ShiftMix parse_mix(const std::string& text) {
  if (text == "all-24h" || text == "24h") return ShiftMix::all_24h;
  if (text == "mixed") return ShiftMix::mixed;
  throw std::invalid_argument("--shifts must be all-24h or mixed");
}

Schedule baseline_for(const Instance& inst, const std::string& schedule_file, const SolveLimits& limits) {
  if (!schedule_file.empty()) {
    Schedule s = schedule_from_json(Json::parse(read_text_file(schedule_file)));
    const auto report = validate(inst, s);
    if (!report.feasible()) throw std::invalid_argument("schedule is infeasible: " + report.violations.front().describe());
    return s;
  }
  const auto solved = solve_heuristic(inst, limits);
  if (!solved.feasible) throw std::runtime_error("no feasible schedule within the horizon");
  return solved.schedule;
}

struct SolverFlags {
  double time_limit = 10.0;
  std::uint64_t seed = 0;
  int restarts = 24;

  void add(CLI::App* app) {
    app->add_option("--time-limit", time_limit, "Solver time limit in seconds")->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "Random seed");
    app->add_option("--restarts", restarts, "Heuristic restarts")->check(CLI::NonNegativeNumber);
  }
  SolveLimits limits() const {
    SolveLimits l;
    l.time_limit = time_limit;
    l.seed = seed;
    l.restarts = restarts;
    return l;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bottleneck identification and capacity relaxation for project scheduling"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Build the benchmark instance groups from .sm networks");
  std::string gen_source = std::string(BOTTLENECK_DATA_DIR) + "/networks";
  std::string gen_out = "instances";
  std::uint64_t gen_seed = 1;
  std::optional<double> gen_alpha;
  std::string gen_shifts;
  int gen_per_group = 5;
  gen->add_option("--source-dir", gen_source, "Directory with one subdirectory of .sm files per family");
  gen->add_option("--out-dir", gen_out, "Output directory");
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--alpha", gen_alpha, "Override the due-date factor of every group")->check(CLI::PositiveNumber);
  gen->add_option("--shifts", gen_shifts, "Override the shift mix of every group: all-24h or mixed");
  gen->add_option("--per-group", gen_per_group, "Instances per group")->check(CLI::PositiveNumber);

  // convert
  auto* conv = app.add_subcommand("convert", "Convert one .sm network to the extended JSON format");
  std::string conv_in, conv_out, conv_shifts;
  double conv_alpha = 1.0;
  std::uint64_t conv_seed = 1;
  conv->add_option("--input", conv_in, "PSPLIB single-mode file")->required();
  conv->add_option("--output", conv_out, "Output file (stdout if omitted)");
  conv->add_option("--alpha", conv_alpha, "Due-date factor")->check(CLI::PositiveNumber);
  conv->add_option("--shifts", conv_shifts, "Comma-separated shift per resource (8h, 16h, 24h)");
  conv->add_option("--seed", conv_seed, "Seed for project weights");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance");
  std::string solve_instance, solve_out;
  bool solve_exact_flag = false;
  SolverFlags solve_flags;
  solve->add_option("--instance", solve_instance, "Instance file")->required();
  solve->add_option("--output", solve_out, "Output file (stdout if omitted)");
  solve->add_flag("--exact", solve_exact_flag, "Use the exact search (small instances only)");
  solve_flags.add(solve);

  // indicators
  auto* ind = app.add_subcommand("indicators", "Per-resource bottleneck indicators as CSV");
  std::string ind_instance, ind_schedule, ind_out, ind_rank;
  SolverFlags ind_flags;
  ind->add_option("--instance", ind_instance, "Instance file")->required();
  ind->add_option("--schedule", ind_schedule, "Schedule file (solved if omitted)");
  ind->add_option("--rank", ind_rank, "Rank resources by this indicator (mrur, auau, mur, auad)");
  ind->add_option("--output", ind_out, "Output file (stdout if omitted)");
  ind_flags.add(ind);

  // relax
  auto* relax = app.add_subcommand("relax", "Propose capacity relaxations with IIRA or SSIRA");
  std::string relax_instance, relax_schedule, relax_out, relax_alg = "ssira";
  std::optional<int> relax_target;
  IiraParams iira;
  SsiraParams ssira;
  std::string iira_indicator = "mrur", iira_kernel = "identity", ssira_key = "Kt";
  int relax_iterations = 1;
  SolverFlags relax_flags;
  relax->add_option("--instance", relax_instance, "Instance file")->required();
  relax->add_option("--schedule", relax_schedule, "Baseline schedule file (solved if omitted)");
  relax->add_option("--algorithm", relax_alg, "iira or ssira");
  relax->add_option("--target", relax_target, "Target project (default: largest weighted tardiness)");
  relax->add_option("--iterations", relax_iterations, "Iterations limit")->check(CLI::PositiveNumber);
  relax->add_option("--indicator", iira_indicator, "IIRA: mrur or auau");
  relax->add_option("--kernel", iira_kernel, "IIRA: identity, uniformN or triangularN");
  relax->add_option("--granularity", iira.granularity, "IIRA: periods per block")->check(CLI::PositiveNumber);
  relax->add_option("--periods", iira.improvement_periods, "IIRA: blocks relaxed per iteration")->check(CLI::PositiveNumber);
  relax->add_option("--step", iira.capacity_step, "IIRA: capacity increase")->check(CLI::PositiveNumber);
  relax->add_option("--key", ssira_key, "SSIRA: Kt or KdS");
  relax->add_option("--intervals", ssira.interval_limit, "SSIRA: intervals per iteration")->check(CLI::PositiveNumber);
  relax->add_option("--output", relax_out, "Output file (stdout if omitted)");
  relax_flags.add(relax);

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Run the parameter grids over an instance directory");
  std::string eval_dir = "instances", eval_alg = "both", eval_grid = "full", eval_out = "results";
  int eval_jobs = 1;
  std::optional<std::uint64_t> eval_seed;
  eval->add_option("--instances-dir", eval_dir, "Directory of instance files");
  eval->add_option("--algorithm", eval_alg, "iira, ssira or both");
  eval->add_option("--grid", eval_grid, "Grid config file, or 'full' / 'reduced'");
  eval->add_option("--out-dir", eval_out, "Output directory");
  eval->add_option("--jobs", eval_jobs, "Parallel workers")->check(CLI::PositiveNumber);
  eval->add_option("--seed", eval_seed, "Solver seed");
  std::string grid_template;
  auto* grid_cmd = app.add_subcommand("grid", "Print a grid config template");
  grid_cmd->add_option("which", grid_template, "full or reduced")->required();

  // serve
  auto* srv = app.add_subcommand("serve", "Run the planner HTTP service");
  int srv_port = 8080;
  std::string srv_host = "127.0.0.1", srv_data = "service-data", srv_ui;
  double srv_time = 10.0;
  std::uint64_t srv_seed = 0;
  srv->add_option("--port", srv_port, "Port");
  srv->add_option("--host", srv_host, "Bind address");
  srv->add_option("--data-dir", srv_data, "Persistence directory");
  srv->add_option("--time-limit", srv_time, "Solver time limit in seconds")->check(CLI::PositiveNumber);
  srv->add_option("--seed", srv_seed, "Solver seed");
  srv->add_option("--ui-dir", srv_ui, "Static files served at /");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      BenchmarkConfig config;
      config.source_dir = gen_source;
      config.seed = gen_seed;
      config.instances_per_group = gen_per_group;
      config.alpha_override = gen_alpha;
      if (!gen_shifts.empty()) config.shift_override = parse_mix(gen_shifts);
      const auto written = write_benchmark(generate_benchmark(config), gen_out);
      std::cout << "wrote " << written.size() - 1 << " instances to " << gen_out << "\n";
    } else if (*conv) {
      ModificationConfig config;
      config.alpha = conv_alpha;
      config.seed = conv_seed;
      if (!conv_shifts.empty()) config.shifts = parse_shift_list(conv_shifts);
      const auto inst = apply_modifications(parse_psplib(read_text_file(conv_in)), config);
      emit(dump_canonical(instance_to_json(inst)), conv_out);
    } else if (*solve) {
      const auto inst = load_instance(solve_instance);
      Json out;
      if (solve_exact_flag) {
        const auto r = solve_exact(inst, solve_flags.limits());
        out = schedule_to_json(r.schedule);
        out["feasible"] = r.found;
        out["optimal"] = r.optimal;
        out["objective"] = r.objective;
      } else {
        const auto r = solve_heuristic(inst, solve_flags.limits());
        out = schedule_to_json(r.schedule);
        out["feasible"] = r.feasible;
        out["objective"] = r.objective;
      }
      emit(dump_canonical(out), solve_out);
      if (!out["feasible"].get<bool>()) return 2;
    } else if (*ind) {
      const auto inst = load_instance(ind_instance);
      const auto s = baseline_for(inst, ind_schedule, ind_flags.limits());
      std::ostringstream os;
      if (!ind_rank.empty()) {
        const auto which = parse_indicator(ind_rank);
        os << "rank,resource," << indicator_name(which) << ",numeric,defined\n";
        int rank = 1;
        for (const auto& score : rank_resources(inst, s, which)) {
          os << rank++ << ',' << score.resource << ',' << score.score.value << ',' << score.score.value.to_double() << ','
             << (score.score.defined ? "true" : "false") << '\n';
        }
      } else {
        os << "resource,MRUR,AUAU,MUR,AUAD,active_periods\n";
        for (const auto& r : inst.resources) {
          os << r.id;
          for (auto which : {Indicator::mrur, Indicator::auau, Indicator::mur, Indicator::auad}) {
            os << ',' << evaluate_indicator(which, inst, s, r.id).value;
          }
          os << ',' << active_periods(inst, s, r.id).size() << '\n';
        }
      }
      emit(os.str(), ind_out);
    } else if (*relax) {
      const auto inst = load_instance(relax_instance);
      const auto limits = relax_flags.limits();
      const auto base = baseline_for(inst, relax_schedule, limits);
      const JobId target = relax_target.value_or(default_target(inst, base));
      const auto alg = parse_algorithm(relax_alg);
      RelaxationRun run;
      Json params;
      if (alg == Algorithm::iira) {
        iira.indicator = parse_indicator(iira_indicator);
        iira.kernel = Kernel::parse(iira_kernel);
        iira.iterations = relax_iterations;
        params = iira_params_to_json(iira);
        run = run_iira(inst, base, iira, target, limits);
      } else {
        ssira.key = parse_sort_key(ssira_key);
        ssira.iterations = relax_iterations;
        params = ssira_params_to_json(ssira);
        run = run_ssira(inst, base, ssira, target, limits);
      }
      Json out;
      out["algorithm"] = algorithm_name(alg);
      out["params"] = params;
      out["target"] = target;
      out["seed"] = limits.seed;
      out["baseline"] = schedule_to_json(base);
      out["baseline_tardiness"] = tardiness(inst, base, target);
      out["iterations"] = Json::array();
      for (const auto& p : run.iterations) out["iterations"].push_back(proposal_to_json(p));
      out["final"] = proposal_to_json(run.final_proposal);
      emit(dump_canonical(out), relax_out);
    } else if (*eval) {
      GridConfig grid;
      if (eval_grid == "full") {
        grid = GridConfig::full();
      } else if (eval_grid == "reduced") {
        grid = GridConfig::reduced();
      } else {
        grid = grid_from_json(Json::parse(read_text_file(eval_grid)));
      }
      EvaluationOptions options;
      options.jobs = eval_jobs;
      options.seed = eval_seed;
      if (eval_alg != "both") {
        const auto alg = parse_algorithm(eval_alg);
        options.run_iira = alg == Algorithm::iira;
        options.run_ssira = alg == Algorithm::ssira;
      }
      const auto instances = load_instance_dir(eval_dir);
      const auto records = run_grid(instances, grid, options);
      write_outputs(records, eval_out);
      std::cout << summary_text(summarize(records));
    } else if (*grid_cmd) {
      std::cout << dump_canonical(grid_to_json_template(grid_template));
    } else if (*srv) {
      ServiceConfig config;
      config.data_dir = srv_data;
      config.limits.time_limit = srv_time;
      config.limits.seed = srv_seed;
      return serve(config, srv_host, srv_port,
                   srv_ui.empty() ? std::nullopt : std::optional<std::filesystem::path>(srv_ui));
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
