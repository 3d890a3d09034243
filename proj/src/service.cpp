#include "bottleneck/service.hpp"

#include <httplib.h>

#include <cstdio>
#include <iostream>

#include "bottleneck/harness.hpp"
#include "bottleneck/indicators.hpp"
#include "bottleneck/proposal.hpp"

namespace bottleneck {

namespace {

struct ApiError {
  int status;
  std::string message;
  Json details = nullptr;
};

ApiResponse error_response(const ApiError& e) {
  Json body{{"error", e.message}};
  if (!e.details.is_null()) body["details"] = e.details;
  return {e.status, body};
}

template <typename F>
ApiResponse guarded(F&& body) {
  try {
    return body();
  } catch (const ApiError& e) {
    return error_response(e);
  } catch (const std::exception& e) {
    return error_response({500, std::string("internal error: ") + e.what()});
  }
}

Json parse_body(const std::string& body) {
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ApiError{422, std::string("request body is not valid JSON: ") + e.what()};
  }
}

bool valid_id(const std::string& id) {
  return id.size() == 16 && id.find_first_not_of("0123456789abcdef") == std::string::npos;
}

Json violations_json(const FeasibilityReport& report) {
  Json out = Json::array();
  for (const auto& v : report.violations) out.push_back(v.describe());
  return out;
}

Json score_json(const ResourceScore& s) {
  return Json{{"resource", s.resource},
              {"value", s.score.value.to_string()},
              {"numeric", s.score.value.to_double()},
              {"defined", s.score.defined}};
}

}  // namespace

std::string content_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Service::Service(ServiceConfig config) : config_(std::move(config)) {
  std::filesystem::create_directories(config_.data_dir / "instances");
  std::filesystem::create_directories(config_.data_dir / "proposals");
}

std::filesystem::path Service::instance_path(const std::string& id) const {
  return config_.data_dir / "instances" / (id + ".json");
}
std::filesystem::path Service::baseline_path(const std::string& id) const {
  return config_.data_dir / "instances" / (id + ".schedule.json");
}
std::filesystem::path Service::proposal_path(const std::string& id) const {
  return config_.data_dir / "proposals" / (id + ".json");
}

std::shared_ptr<std::mutex> Service::lock_for(const std::string& id) {
  std::lock_guard<std::mutex> guard(registry_mutex_);
  auto& slot = locks_[id];
  if (!slot) slot = std::make_shared<std::mutex>();
  return slot;
}

Instance Service::load_stored_instance(const std::string& id) const {
  if (!valid_id(id) || !std::filesystem::exists(instance_path(id))) throw ApiError{404, "unknown instance " + id};
  return load_instance(instance_path(id));
}

Schedule Service::baseline(const std::string& id) {
  const Instance inst = load_stored_instance(id);
  auto lock = lock_for(id);
  std::lock_guard<std::mutex> guard(*lock);
  if (std::filesystem::exists(baseline_path(id))) {
    return schedule_from_json(Json::parse(read_text_file(baseline_path(id))));
  }
  const auto solved = solve_heuristic(inst, config_.limits);
  if (!solved.feasible) throw ApiError{422, "no feasible schedule within the horizon"};
  write_text_file(baseline_path(id), dump_canonical(schedule_to_json(solved.schedule)));
  return solved.schedule;
}

std::string Service::store_instance(const Instance& inst, const std::optional<Schedule>& seed) {
  const std::string text = dump_canonical(instance_to_json(inst));
  const std::string id = content_hash(text);
  auto lock = lock_for(id);
  std::lock_guard<std::mutex> guard(*lock);
  if (!std::filesystem::exists(instance_path(id))) write_text_file(instance_path(id), text);
  if (seed && !std::filesystem::exists(baseline_path(id))) {
    write_text_file(baseline_path(id), dump_canonical(schedule_to_json(*seed)));
  }
  return id;
}

Json Service::load_proposal(const std::string& id) const {
  if (!valid_id(id) || !std::filesystem::exists(proposal_path(id))) throw ApiError{404, "unknown proposal " + id};
  return Json::parse(read_text_file(proposal_path(id)));
}

ApiResponse Service::store_proposal(Json record) {
  // The id covers everything that determines the result; status is excluded.
  Json identity = record;
  identity.erase("status");
  const std::string id = content_hash(dump_canonical(identity));
  auto lock = lock_for(id);
  std::lock_guard<std::mutex> guard(*lock);
  if (std::filesystem::exists(proposal_path(id))) {
    return {200, Json::parse(read_text_file(proposal_path(id)))};
  }
  Json stored;
  stored["id"] = id;
  for (const auto& [key, value] : record.items()) stored[key] = value;
  write_text_file(proposal_path(id), dump_canonical(stored));
  return {201, stored};
}

ApiResponse Service::create_instance(const std::string& body) {
  return guarded([&]() -> ApiResponse {
    const Json doc = parse_body(body);
    Instance inst;
    try {
      inst = instance_from_json(doc);
    } catch (const InstanceError& e) {
      throw ApiError{422, std::string("invalid instance: ") + e.what()};
    }
    return {201, Json{{"id", store_instance(inst, std::nullopt)}}};
  });
}

ApiResponse Service::get_instance(const std::string& id) {
  return guarded([&]() -> ApiResponse { return {200, instance_to_json(load_stored_instance(id))}; });
}

ApiResponse Service::get_schedule(const std::string& id) {
  return guarded([&]() -> ApiResponse {
    const Instance inst = load_stored_instance(id);
    const Schedule s = baseline(id);
    const auto summary = weighted_tardiness(inst, s);
    Json per = Json::object();
    for (const auto& [p, v] : summary.per_project) per[std::to_string(p)] = v;
    Json out = schedule_to_json(s);
    out["objective"] = summary.total;
    out["per_project"] = per;
    return {200, out};
  });
}

ApiResponse Service::get_indicators(const std::string& id, const std::string& indicator) {
  return guarded([&]() -> ApiResponse {
    const Instance inst = load_stored_instance(id);
    Indicator ind;
    try {
      ind = parse_indicator(indicator.empty() ? "mrur" : indicator);
    } catch (const std::exception& e) {
      throw ApiError{422, e.what()};
    }
    const Schedule s = baseline(id);
    Json scores = Json::array();
    for (const auto& score : rank_resources(inst, s, ind)) scores.push_back(score_json(score));
    return {200, Json{{"indicator", std::string(indicator_name(ind))}, {"scores", scores}}};
  });
}

ApiResponse Service::create_proposal(const std::string& instance_id, const std::string& body) {
  return guarded([&]() -> ApiResponse {
    const Instance inst = load_stored_instance(instance_id);
    const Json req = parse_body(body);
    if (!req.is_object() || !req.contains("algorithm") || !req["algorithm"].is_string()) {
      throw ApiError{422, "request needs an 'algorithm' of iira or ssira"};
    }
    const Schedule base = baseline(instance_id);
    Algorithm alg;
    Json params;
    JobId target = 0;
    RelaxationRun run;
    try {
      alg = parse_algorithm(req["algorithm"].get<std::string>());
      const Json raw = req.value("params", Json::object());
      if (req.contains("target") && !req["target"].is_null()) {
        if (!req["target"].is_number_integer()) throw std::invalid_argument("target must be a job id");
        target = req["target"].get<int>();
        if (target < 1 || target > inst.job_count() || !precedence_graph(inst).is_root(target)) {
          throw std::invalid_argument("target " + std::to_string(target) + " is not a project");
        }
      } else {
        target = default_target(inst, base);
      }
      if (alg == Algorithm::iira) {
        const auto p = iira_params_from_json(raw);
        params = iira_params_to_json(p);
        run = run_iira(inst, base, p, target, config_.limits);
      } else {
        const auto p = ssira_params_from_json(raw);
        params = ssira_params_to_json(p);
        run = run_ssira(inst, base, p, target, config_.limits);
      }
    } catch (const std::invalid_argument& e) {
      throw ApiError{422, e.what()};
    }
    Json record = proposal_to_json(run.final_proposal);
    Json out;
    out["base_instance_id"] = instance_id;
    out["parent_proposal_id"] = nullptr;
    out["algorithm"] = algorithm_name(alg);
    out["params"] = params;
    out["target"] = target;
    out["seed"] = config_.limits.seed;
    out["capacity_edits"] = Json::array();
    for (const auto& [key, value] : record.items()) out[key] = value;
    out["status"] = "pending";
    return store_proposal(out);
  });
}

ApiResponse Service::get_proposal(const std::string& id) {
  return guarded([&]() -> ApiResponse { return {200, load_proposal(id)}; });
}

ApiResponse Service::augment(const std::string& proposal_id, const std::string& body) {
  return guarded([&]() -> ApiResponse {
    const Json parent = load_proposal(proposal_id);
    if (parent.value("status", "") != "pending") throw ApiError{409, "only pending proposals can be augmented"};
    const Json req = parse_body(body);
    if (!req.is_object() || !req.contains("capacity_edits") || !req["capacity_edits"].is_array()) {
      throw ApiError{422, "request needs a 'capacity_edits' array"};
    }
    const std::string base_id = parent.at("base_instance_id").get<std::string>();
    const Instance original = load_stored_instance(base_id);
    const Schedule base = baseline(base_id);
    const RelaxationProposal prev = proposal_from_json(parent);

    Instance edited = prev.instance;
    for (const auto& e : req["capacity_edits"]) {
      if (!e.is_object() || !e.contains("k") || !e.contains("t") || !e.contains("delta") ||
          !e["k"].is_number_integer() || !e["t"].is_number_integer() || !e["delta"].is_number_integer()) {
        throw ApiError{422, "each capacity edit needs integer k, t and delta"};
      }
      const int k = e["k"].get<int>();
      const int t = e["t"].get<int>();
      if (k < 1 || k > edited.resource_count() || t < 0 || t >= edited.horizon) {
        throw ApiError{422, "capacity edit outside the instance: k=" + std::to_string(k) + " t=" + std::to_string(t)};
      }
      edited.resource(k).adjust(t, e["delta"].get<int>());
      if (edited.capacity(k, t) < 0) {
        throw ApiError{422, "capacity of resource " + std::to_string(k) + " at t=" + std::to_string(t) + " would be " +
                                std::to_string(edited.capacity(k, t))};
      }
    }

    try {
      validate_structure(edited);
    } catch (const InstanceError& e) {
      throw ApiError{422, std::string("edited instance is unschedulable: ") + e.what()};
    }
    // Warm start when the previous schedule survives the edits.
    const auto report = validate(edited, prev.schedule);
    const auto solved = report.feasible() ? solve_heuristic(edited, config_.limits, prev.schedule)
                                          : solve_heuristic(edited, config_.limits);
    if (!solved.feasible) {
      throw ApiError{422, "no feasible schedule after the capacity edits", violations_json(report)};
    }
    // Only relaxations are accounted; the planner's reductions shape the schedule.
    Instance relaxed = edited;
    for (ResourceId k = 1; k <= relaxed.resource_count(); ++k) {
      for (int t = 0; t < relaxed.horizon; ++t) {
        const int gap = original.capacity(k, t) - relaxed.capacity(k, t);
        if (gap > 0) relaxed.resource(k).adjust(t, gap);
      }
    }
    const JobId target = parent.at("target").get<int>();
    const auto prop = account_iteration(original, base, relaxed, solved.schedule, target, prev.iteration);

    Json edits = parent.at("capacity_edits");
    for (const auto& e : req["capacity_edits"]) edits.push_back(Json{{"k", e["k"]}, {"t", e["t"]}, {"delta", e["delta"]}});
    Json out;
    out["base_instance_id"] = base_id;
    out["parent_proposal_id"] = proposal_id;
    out["algorithm"] = parent.at("algorithm");
    out["params"] = parent.at("params");
    out["target"] = target;
    out["seed"] = config_.limits.seed;
    out["capacity_edits"] = edits;
    const Json accounted = proposal_to_json(prop);
    for (const auto& [key, value] : accounted.items()) out[key] = value;
    out["status"] = "pending";
    return store_proposal(out);
  });
}

ApiResponse Service::accept(const std::string& proposal_id) {
  return guarded([&]() -> ApiResponse {
    load_proposal(proposal_id);
    auto lock = lock_for(proposal_id);
    std::lock_guard<std::mutex> guard(*lock);
    Json record = load_proposal(proposal_id);
    if (record.value("status", "") != "pending") {
      throw ApiError{409, "proposal is already " + record.value("status", std::string("?"))};
    }
    const RelaxationProposal prop = proposal_from_json(record);
    const std::string new_id = store_instance(prop.instance, prop.schedule);
    record["status"] = "accepted";
    record["new_instance_id"] = new_id;
    write_text_file(proposal_path(proposal_id), dump_canonical(record));
    return {200, Json{{"new_instance_id", new_id}, {"status", "accepted"}}};
  });
}

ApiResponse Service::reject(const std::string& proposal_id) {
  return guarded([&]() -> ApiResponse {
    load_proposal(proposal_id);
    auto lock = lock_for(proposal_id);
    std::lock_guard<std::mutex> guard(*lock);
    Json record = load_proposal(proposal_id);
    if (record.value("status", "") != "pending") {
      throw ApiError{409, "proposal is already " + record.value("status", std::string("?"))};
    }
    record["status"] = "rejected";
    write_text_file(proposal_path(proposal_id), dump_canonical(record));
    return {200, Json{{"id", proposal_id}, {"status", "rejected"}}};
  });
}

void Service::bind(httplib::Server& server, const std::optional<std::filesystem::path>& ui_dir) {
  auto reply = [](httplib::Response& res, const ApiResponse& api) {
    res.status = api.status;
    res.set_content(api.body.dump(), "application/json; charset=utf-8");
  };
  server.Post("/api/instances", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, create_instance(req.body));
  });
  server.Get(R"(/api/instances/([0-9a-f]+))", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, get_instance(req.matches[1]));
  });
  server.Get(R"(/api/instances/([0-9a-f]+)/schedule)",
             [this, reply](const httplib::Request& req, httplib::Response& res) { reply(res, get_schedule(req.matches[1])); });
  server.Get(R"(/api/instances/([0-9a-f]+)/indicators)",
             [this, reply](const httplib::Request& req, httplib::Response& res) {
               reply(res, get_indicators(req.matches[1], req.get_param_value("indicator")));
             });
  server.Post(R"(/api/instances/([0-9a-f]+)/proposals)",
              [this, reply](const httplib::Request& req, httplib::Response& res) {
                reply(res, create_proposal(req.matches[1], req.body));
              });
  server.Get(R"(/api/proposals/([0-9a-f]+))", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, get_proposal(req.matches[1]));
  });
  server.Post(R"(/api/proposals/([0-9a-f]+)/augment)",
              [this, reply](const httplib::Request& req, httplib::Response& res) {
                reply(res, augment(req.matches[1], req.body));
              });
  server.Post(R"(/api/proposals/([0-9a-f]+)/accept)",
              [this, reply](const httplib::Request& req, httplib::Response& res) { reply(res, accept(req.matches[1])); });
  server.Post(R"(/api/proposals/([0-9a-f]+)/reject)",
              [this, reply](const httplib::Request& req, httplib::Response& res) { reply(res, reject(req.matches[1])); });
  if (ui_dir) server.set_mount_point("/", ui_dir->string());
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) res.set_content(Json{{"error", "not found"}}.dump(), "application/json; charset=utf-8");
  });
}

int serve(const ServiceConfig& config, const std::string& host, int port,
          const std::optional<std::filesystem::path>& ui_dir) {
  Service service(config);
  httplib::Server server;
  service.bind(server, ui_dir);
  std::cerr << "listening on http://" << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    std::cerr << "cannot listen on " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}

}  // namespace bottleneck
