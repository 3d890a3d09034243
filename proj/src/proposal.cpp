#include "bottleneck/proposal.hpp"

#include <cstdlib>
#include <stdexcept>

namespace bottleneck {

Metrics compute_metrics(const Instance& original, const Schedule& original_schedule, const Schedule& proposal_schedule,
                        JobId target) {
  Metrics m;
  m.delta_tardiness = tardiness(original, original_schedule, target) - tardiness(original, proposal_schedule, target);
  for (const auto& job : original.jobs) {
    m.delta_s += std::abs(completion(original, original_schedule, job.id) - completion(original, proposal_schedule, job.id));
  }
  return m;
}

RelaxationProposal identity_proposal(const Instance& original, const Schedule& schedule) {
  RelaxationProposal p;
  p.instance = original;
  p.schedule = schedule;
  return p;
}

RelaxationProposal account_iteration(const Instance& original, const Schedule& original_schedule,
                                     const Instance& working, const Schedule& schedule, JobId target, int iteration) {
  const Instance reduced = reduce_capacity_changes(original, working, schedule);
  RelaxationProposal p;
  p.iteration = iteration;
  p.changes = extract_changes(original, reduced, schedule);
  p.instance = apply_changes(original, p.changes);
  if (const auto report = validate(p.instance, schedule); !report.feasible()) {
    throw std::logic_error("accounted instance does not admit the relaxed schedule: " +
                           report.violations.front().describe());
  }
  p.schedule = schedule;
  p.metrics = compute_metrics(original, original_schedule, schedule, target);
  return p;
}

JobId default_target(const Instance& inst, const Schedule& schedule) {
  JobId best = 0;
  std::int64_t best_value = -1;
  for (const auto& [project, value] : weighted_tardiness(inst, schedule).per_project) {
    if (value > best_value) {
      best = project;
      best_value = value;
    }
  }
  if (best == 0) {
    const auto roots = projects(inst);
    if (roots.empty()) throw InstanceError("instance has no projects");
    best = roots.front();
  }
  return best;
}

Json changes_to_json(const CapacityChanges& changes) {
  Json doc;
  Json additions = Json::array();
  for (const auto& a : changes.additions) {
    additions.push_back(Json{{"k", a.resource}, {"s", a.start}, {"e", a.end}, {"c", a.amount}});
  }
  Json migrations = Json::array();
  for (const auto& m : changes.migrations) {
    migrations.push_back(Json{{"from", m.from}, {"to", m.to}, {"s", m.start}, {"e", m.end}, {"c", m.amount}});
  }
  doc["additions"] = std::move(additions);
  doc["migrations"] = std::move(migrations);
  return doc;
}

CapacityChanges changes_from_json(const Json& doc) {
  CapacityChanges changes;
  for (const auto& a : doc.at("additions")) {
    changes.additions.push_back({a.at("k").get<int>(), a.at("s").get<int>(), a.at("e").get<int>(), a.at("c").get<int>()});
  }
  for (const auto& m : doc.at("migrations")) {
    changes.migrations.push_back({m.at("from").get<int>(), m.at("to").get<int>(), m.at("s").get<int>(),
                                  m.at("e").get<int>(), m.at("c").get<int>()});
  }
  return changes;
}

Json proposal_to_json(const RelaxationProposal& proposal) {
  Json doc;
  doc["iteration"] = proposal.iteration;
  doc["instance"] = instance_to_json(proposal.instance);
  doc["schedule"] = schedule_to_json(proposal.schedule);
  const auto changes = changes_to_json(proposal.changes);
  doc["additions"] = changes["additions"];
  doc["migrations"] = changes["migrations"];
  doc["metrics"] = Json{{"delta_tardiness", proposal.metrics.delta_tardiness}, {"delta_s", proposal.metrics.delta_s}};
  return doc;
}

RelaxationProposal proposal_from_json(const Json& doc) {
  RelaxationProposal p;
  p.iteration = doc.at("iteration").get<int>();
  p.instance = instance_from_json(doc.at("instance"));
  p.schedule = schedule_from_json(doc.at("schedule"));
  Json changes;
  changes["additions"] = doc.at("additions");
  changes["migrations"] = doc.at("migrations");
  p.changes = changes_from_json(changes);
  p.metrics.delta_tardiness = doc.at("metrics").at("delta_tardiness").get<int>();
  p.metrics.delta_s = doc.at("metrics").at("delta_s").get<std::int64_t>();
  return p;
}

}  // namespace bottleneck
