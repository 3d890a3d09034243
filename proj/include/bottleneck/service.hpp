#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "bottleneck/json_io.hpp"
#include "bottleneck/solver.hpp"

namespace httplib {
class Server;
}

namespace bottleneck {

struct ServiceConfig {
  std::filesystem::path data_dir = "service-data";
  SolveLimits limits{.time_limit = 10.0, .node_limit = 0, .restarts = 8, .seed = 0};
};

struct ApiResponse {
  int status = 200;
  Json body;
};

/// What-if planner backend. Instances and proposals are JSON documents under
/// the data directory, named by a hash of their content. Handlers never
/// throw; errors come back as {"error": ..., "details"?: ...} with 404, 409 or 422.
class Service {
 public:
  explicit Service(ServiceConfig config);

  ApiResponse create_instance(const std::string& body);
  ApiResponse get_instance(const std::string& id);
  /// Baseline schedule, solved on first request and persisted.
  ApiResponse get_schedule(const std::string& id);
  ApiResponse get_indicators(const std::string& id, const std::string& indicator);
  /// Body {algorithm: "iira"|"ssira", params: {...}, target?: job id}.
  ApiResponse create_proposal(const std::string& instance_id, const std::string& body);
  ApiResponse get_proposal(const std::string& id);
  /// Body {capacity_edits: [{k, t, delta}]} applied over the proposal's instance.
  ApiResponse augment(const std::string& proposal_id, const std::string& body);
  ApiResponse accept(const std::string& proposal_id);
  ApiResponse reject(const std::string& proposal_id);

  /// Registers every route on `server`; serves `ui_dir` statically when given.
  void bind(httplib::Server& server, const std::optional<std::filesystem::path>& ui_dir = std::nullopt);

  const ServiceConfig& config() const { return config_; }

 private:
  std::filesystem::path instance_path(const std::string& id) const;
  std::filesystem::path baseline_path(const std::string& id) const;
  std::filesystem::path proposal_path(const std::string& id) const;
  std::shared_ptr<std::mutex> lock_for(const std::string& id);

  Instance load_stored_instance(const std::string& id) const;
  Schedule baseline(const std::string& id);
  std::string store_instance(const Instance& inst, const std::optional<Schedule>& baseline);
  Json load_proposal(const std::string& id) const;
  ApiResponse store_proposal(Json record);

  ServiceConfig config_;
  std::mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<std::mutex>> locks_;
};

/// 64-bit FNV-1a as 16 lowercase hex digits.
std::string content_hash(const std::string& text);

/// Blocks serving HTTP until the process is stopped.
int serve(const ServiceConfig& config, const std::string& host, int port,
          const std::optional<std::filesystem::path>& ui_dir);

}  // namespace bottleneck
