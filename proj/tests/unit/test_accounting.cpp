#include <doctest.h>

#include "bottleneck/accounting.hpp"
#include "bottleneck/proposal.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace bottleneck;
using fixtures::starts;

namespace {
Instance raise(Instance inst, ResourceId k, int s, int e, int by) {
  for (int t = s; t < e; ++t) inst.resource(k).adjust(t, by);
  return inst;
}
}  // namespace

TEST_CASE("reduction keeps consumed capacity only") {
  const auto original = fixtures::tiny1();
  // TINY-1 after the SSIRA relaxation: +1 on [0,2) and [3,4)
  const auto modified = raise(raise(original, 1, 0, 2, 1), 1, 3, 4, 1);
  const auto s = starts({0, 0, 3});
  const auto reduced = reduce_capacity_changes(original, modified, s);
  CHECK(consumption_timeline(modified, s, 1)[0] == 3);
  for (int t = 0; t < original.horizon; ++t) {
    CHECK(reduced.capacity(1, t) == original.capacity(1, t) + (t < 2 ? 1 : 0));
    CHECK(reduced.capacity(1, t) <= modified.capacity(1, t));
    CHECK(reduced.capacity(1, t) == oracles::minimal_capacity(original, s.starts, 1, t));
  }
  CHECK(validate(reduced, s).feasible());
}

TEST_CASE("reduction trivial cases") {
  const auto original = fixtures::tiny1();
  const auto s = starts({3, 0, 5});
  const auto same = reduce_capacity_changes(original, raise(original, 1, 0, 24, 2), s);
  CHECK(instance_to_json(same) == instance_to_json(original));

  // fully consumed +1 on [0,3) for S=(0,0,3) with d3=1 on t=3 -> consumption 3,3,2,1
  const auto modified = raise(original, 1, 0, 2, 1);
  const auto reduced = reduce_capacity_changes(original, modified, starts({0, 0, 3}));
  CHECK(instance_to_json(reduced) == instance_to_json(modified));
}

TEST_CASE("reduction preconditions") {
  const auto original = fixtures::tiny1();
  CHECK_THROWS_AS(reduce_capacity_changes(original, raise(original, 1, 0, 2, -1), starts({3, 0, 5})),
                  std::logic_error);
  CHECK_THROWS_AS(reduce_capacity_changes(original, original, starts({0, 0, 5})), std::logic_error);
}

TEST_CASE("slab decomposition") {
  CHECK(slab_decomposition({1, 2, 2, 1}) == std::vector<Rectangle>{{0, 4, 1}, {1, 3, 1}});
  CHECK(slab_decomposition({2, 2, 0, 1}) == std::vector<Rectangle>{{0, 2, 2}, {3, 4, 1}});
  CHECK(slab_decomposition({0, 0}).empty());
  CHECK(slab_decomposition({}).empty());
}

TEST_CASE("extract changes: TINY-2 migrates from the idle resource") {
  const auto original = fixtures::tiny2();
  const auto reduced = raise(original, 1, 0, 2, 1);
  const auto s = starts({0, 0, 3});
  const auto changes = extract_changes(original, reduced, s);
  CHECK(changes.additions.empty());
  REQUIRE(changes.migrations.size() == 1);
  CHECK(changes.migrations[0] == CapacityMigration{2, 1, 0, 2, 1});
  const auto composed = apply_changes(original, changes);
  CHECK(composed.capacity(1, 0) == 3);
  CHECK(composed.capacity(2, 0) == 1);
  CHECK(validate(composed, s).feasible());
}

TEST_CASE("extract changes: single resource gives additions") {
  const auto original = fixtures::tiny1();
  const auto reduced = raise(original, 1, 0, 2, 1);
  const auto changes = extract_changes(original, reduced, starts({0, 0, 3}));
  CHECK(changes.migrations.empty());
  REQUIRE(changes.additions.size() == 1);
  CHECK(changes.additions[0] == CapacityAddition{1, 0, 2, 1});
}

TEST_CASE("donor slack is debited") {
  // R1 needs +1 on [0,2) twice over (height 2); R2 has slack 1 only.
  Instance original;
  original.resources = {constant_resource(1, 1), constant_resource(2, 1)};
  original.jobs = {fixtures::make_job(1, 2, {1, 0}, 5, 1), fixtures::make_job(2, 2, {1, 0}, 5, 1),
                   fixtures::make_job(3, 2, {1, 0}, 5, 1)};
  original.horizon = 10;
  const auto s = starts({0, 0, 0});
  const auto reduced = raise(original, 1, 0, 2, 2);
  const auto changes = extract_changes(original, reduced, s);
  CHECK(changes.migrations.empty());  // height 2 exceeds the donor slack of 1
  CHECK(changes.additions == std::vector<CapacityAddition>{{1, 0, 2, 2}});

  // Profile [2,1]: rectangles (0,2,1) and (0,1,1); donor covers the first only.
  Instance o2 = original;
  o2.jobs[2] = fixtures::make_job(3, 1, {1, 0}, 5, 1);
  const auto r2 = raise(raise(o2, 1, 0, 2, 1), 1, 0, 1, 1);
  const auto c2 = extract_changes(o2, r2, s);
  CHECK(c2.migrations == std::vector<CapacityMigration>{{2, 1, 0, 2, 1}});
  CHECK(c2.additions == std::vector<CapacityAddition>{{1, 0, 1, 1}});
}

TEST_CASE("accounting round-trip on random relaxations") {
  std::mt19937_64 rng(99);
  for (int n = 0; n < 40; ++n) {
    const auto original = fixtures::random_feasible_instance(rng);
    Instance modified = original;
    for (int e = 0; e < 4; ++e) {
      const auto k = fixtures::uniform(rng, 1, original.resource_count());
      const int s = fixtures::uniform(rng, 0, original.horizon - 1);
      const int len = fixtures::uniform(rng, 1, 5);
      modified = raise(modified, k, s, std::min(original.horizon, s + len), fixtures::uniform(rng, 1, 2));
    }
    const auto sched = solve_heuristic(modified).schedule;
    const auto reduced = reduce_capacity_changes(original, modified, sched);
    const auto changes = extract_changes(original, reduced, sched);
    const auto composed = apply_changes(original, changes);
    CHECK(validate(composed, sched).feasible());
    for (const auto& r : original.resources) {
      for (int t = 0; t < original.horizon; ++t) {
        CHECK(reduced.capacity(r.id, t) == oracles::minimal_capacity(original, sched.starts, r.id, t));
        CHECK(inflow(changes, r.id, t) == reduced.capacity(r.id, t) - original.capacity(r.id, t));
        CHECK(composed.capacity(r.id, t) == reduced.capacity(r.id, t) - outflow(changes, r.id, t));
        CHECK(composed.capacity(r.id, t) >= oracles::load_at(original, sched.starts, r.id, t));
      }
    }
    for (const auto& m : changes.migrations) {
      CHECK(m.from != m.to);
      CHECK(m.amount >= 1);
      CHECK(m.start < m.end);
    }
    for (const auto& a : changes.additions) CHECK(a.amount >= 1);
  }
}

TEST_CASE("metrics") {
  const auto inst = fixtures::tiny1();
  const auto base = starts({3, 0, 5});
  CHECK(compute_metrics(inst, base, starts({0, 0, 3}), 3) == Metrics{2, 3 + 0 + 2});
  CHECK(compute_metrics(inst, base, base, 3) == Metrics{0, 0});
  CHECK(compute_metrics(inst, base, starts({3, 0, 8}), 3).delta_s == 3);
  CHECK(default_target(inst, base) == 3);
}

TEST_CASE("proposal JSON round-trip") {
  const auto original = fixtures::tiny2();
  const auto modified = raise(original, 1, 0, 2, 1);
  const auto p = account_iteration(original, starts({3, 0, 5}), modified, starts({0, 0, 3}), 3, 1);
  CHECK(p.metrics.delta_tardiness == 2);
  REQUIRE(p.changes.migrations.size() == 1);
  const auto doc = proposal_to_json(p);
  CHECK(doc["migrations"][0]["from"] == 2);
  const auto back = proposal_from_json(doc);
  CHECK(dump_canonical(proposal_to_json(back)) == dump_canonical(doc));

  const auto id = identity_proposal(original, starts({3, 0, 5}));
  CHECK(id.changes.empty());
  CHECK(id.metrics == Metrics{0, 0});
}
