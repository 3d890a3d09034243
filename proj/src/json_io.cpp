#include "bottleneck/json_io.hpp"

#include <fstream>
#include <sstream>

namespace bottleneck {

namespace {

int parse_int_key(const std::string& key, const char* what) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(key, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != key.size()) throw InstanceError(std::string("non-integer ") + what + " key '" + key + "'");
  return value;
}

template <typename T>
T require(const Json& obj, const char* field) {
  if (!obj.is_object() || !obj.contains(field)) throw InstanceError(std::string("missing field '") + field + "'");
  try {
    return obj.at(field).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InstanceError(std::string("bad field '") + field + "': " + e.what());
  }
}

}  // namespace

Json instance_to_json(const Instance& inst) {
  Json doc;
  Json jobs = Json::array();
  for (const auto& job : inst.jobs) {
    Json j;
    j["id"] = job.id;
    j["duration"] = job.duration;
    j["due_date"] = job.due_date ? Json(*job.due_date) : Json(nullptr);
    j["weight"] = job.weight;
    Json consumption = Json::object();
    for (std::size_t k = 0; k < job.consumption.size(); ++k) {
      if (job.consumption[k] != 0) consumption[std::to_string(k + 1)] = job.consumption[k];
    }
    j["consumption"] = std::move(consumption);
    jobs.push_back(std::move(j));
  }
  doc["jobs"] = std::move(jobs);

  Json precedences = Json::array();
  for (const auto& [i, j] : inst.precedences) precedences.push_back(Json::array({i, j}));
  doc["precedences"] = std::move(precedences);

  Json resources = Json::array();
  for (const auto& r : inst.resources) {
    Json jr;
    jr["id"] = r.id;
    jr["base_pattern"] = Json(r.base_pattern);
    Json overlay = Json::object();
    for (const auto& [t, delta] : r.overlay) {
      if (delta != 0) overlay[std::to_string(t)] = delta;
    }
    jr["overlay"] = std::move(overlay);
    resources.push_back(std::move(jr));
  }
  doc["resources"] = std::move(resources);
  doc["horizon"] = inst.horizon;
  return doc;
}

Instance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw InstanceError("instance document must be a JSON object");
  Instance inst;
  inst.horizon = require<int>(doc, "horizon");

  const auto resources = require<Json>(doc, "resources");
  if (!resources.is_array()) throw InstanceError("'resources' must be an array");
  for (const auto& jr : resources) {
    Resource r;
    r.id = require<int>(jr, "id");
    const auto pattern = require<std::vector<int>>(jr, "base_pattern");
    if (pattern.size() != static_cast<std::size_t>(kCapacityPeriod)) {
      throw InstanceError("resource " + std::to_string(r.id) + " base_pattern must have 24 entries");
    }
    std::copy(pattern.begin(), pattern.end(), r.base_pattern.begin());
    if (jr.contains("overlay")) {
      const auto& overlay = jr.at("overlay");
      if (!overlay.is_object()) throw InstanceError("'overlay' must be an object");
      for (const auto& [key, value] : overlay.items()) {
        if (!value.is_number_integer()) throw InstanceError("overlay delta must be an integer");
        r.adjust(parse_int_key(key, "overlay"), value.get<int>());
      }
    }
    inst.resources.push_back(std::move(r));
  }

  const auto jobs = require<Json>(doc, "jobs");
  if (!jobs.is_array()) throw InstanceError("'jobs' must be an array");
  for (const auto& jj : jobs) {
    Job job;
    job.id = require<int>(jj, "id");
    job.duration = require<int>(jj, "duration");
    if (!jj.contains("due_date")) throw InstanceError("missing field 'due_date'");
    if (!jj.at("due_date").is_null()) job.due_date = require<int>(jj, "due_date");
    job.weight = require<std::int64_t>(jj, "weight");
    job.consumption.assign(inst.resources.size(), 0);
    if (jj.contains("consumption")) {
      const auto& consumption = jj.at("consumption");
      if (!consumption.is_object()) throw InstanceError("'consumption' must be an object");
      for (const auto& [key, value] : consumption.items()) {
        const int k = parse_int_key(key, "consumption");
        if (k < 1 || k > static_cast<int>(inst.resources.size())) {
          throw InstanceError("job " + std::to_string(job.id) + " consumes unknown resource " + key);
        }
        if (!value.is_number_integer()) throw InstanceError("consumption must be an integer");
        job.consumption[static_cast<std::size_t>(k - 1)] = value.get<int>();
      }
    }
    inst.jobs.push_back(std::move(job));
  }

  const auto precedences = require<Json>(doc, "precedences");
  if (!precedences.is_array()) throw InstanceError("'precedences' must be an array");
  for (const auto& p : precedences) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
      throw InstanceError("each precedence must be a pair of job ids");
    }
    inst.precedences.emplace_back(p[0].get<int>(), p[1].get<int>());
  }

  validate_structure(inst);
  return inst;
}

Json schedule_to_json(const Schedule& schedule) {
  Json doc;
  doc["starts"] = schedule.starts;
  return doc;
}

Schedule schedule_from_json(const Json& doc) {
  Schedule s;
  s.starts = require<std::vector<int>>(doc, "starts");
  return s;
}

std::string dump_canonical(const Json& doc) { return doc.dump(2) + "\n"; }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

Instance load_instance(const std::filesystem::path& path) {
  Json doc;
  try {
    doc = Json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InstanceError(path.string() + ": " + e.what());
  }
  return instance_from_json(doc);
}

void save_instance(const std::filesystem::path& path, const Instance& inst) {
  write_text_file(path, dump_canonical(instance_to_json(inst)));
}

}  // namespace bottleneck
