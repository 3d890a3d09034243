#include <doctest.h>

#include "bottleneck/solver.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace bottleneck;
using fixtures::starts;

TEST_CASE("exact: TINY-1 optimum 2") {
  const auto inst = fixtures::tiny1();
  const auto r = solve_exact(inst);
  REQUIRE(r.found);
  CHECK(r.optimal);
  CHECK(r.objective == 2);
  CHECK(oracles::brute_force_optimum(inst) == 2);
  CHECK(validate(inst, r.schedule).feasible());
  CHECK(objective(inst, r.schedule) == 2);
}

TEST_CASE("exact: TINY-1 with capacity 3 reaches 0") {
  const auto inst = fixtures::tiny1(3);
  const auto r = solve_exact(inst);
  CHECK(r.objective == 0);
  CHECK(oracles::brute_force_optimum(inst) == 0);
}

TEST_CASE("exact: no due dates gives objective 0") {
  auto inst = fixtures::tiny1();
  inst.jobs[2].due_date.reset();
  inst.jobs[2].weight = 0;
  const auto r = solve_exact(inst);
  CHECK(r.found);
  CHECK(r.objective == 0);
  CHECK(validate(inst, r.schedule).feasible());
}

TEST_CASE("exact: infeasible and over-size instances") {
  // 3-period job on a resource that is never on for 3 consecutive periods
  Instance inst;
  Resource r;
  r.id = 1;
  for (int h = 0; h < 24; h += 3) r.base_pattern[static_cast<std::size_t>(h)] = r.base_pattern[static_cast<std::size_t>(h + 1)] = 1;
  inst.resources = {r};
  inst.jobs = {fixtures::make_job(1, 3, {1}, 5, 1)};
  inst.horizon = 24;
  CHECK_FALSE(solve_exact(inst).found);
  CHECK_FALSE(solve_heuristic(inst).feasible);
  CHECK(oracles::brute_force_optimum(inst) == -1);

  Instance big;
  big.resources = {constant_resource(1, 1)};
  for (int j = 1; j <= kExactJobLimit + 1; ++j) big.jobs.push_back(fixtures::make_job(j, 1, {1}, 40, 1));
  big.horizon = 48;
  CHECK_THROWS_AS(solve_exact(big), std::invalid_argument);
}

TEST_CASE("exact: node limit reports a non-optimal incumbent") {
  std::mt19937_64 rng(21);
  fixtures::RandomSpec spec;
  spec.min_jobs = spec.max_jobs = 8;
  const auto inst = fixtures::random_feasible_instance(rng, spec);
  SolveLimits limits;
  limits.node_limit = 1;
  const auto r = solve_exact(inst, limits);
  CHECK_FALSE(r.optimal);
  if (r.found) CHECK(validate(inst, r.schedule).feasible());
}

TEST_CASE("heuristic: TINY-1 and warm starts") {
  const auto inst = fixtures::tiny1();
  const auto r = solve_heuristic(inst);
  REQUIRE(r.feasible);
  CHECK(r.objective == 2);
  CHECK(validate(inst, r.schedule).feasible());

  const auto exact = solve_exact(inst);
  CHECK(solve_heuristic(inst, {}, exact.schedule).objective == exact.objective);

  CHECK_THROWS_AS(solve_heuristic(inst, {}, starts({0, 0, 5})), std::logic_error);
}

TEST_CASE("heuristic: relaxed TINY-1 warm-started reaches 0") {
  auto inst = fixtures::tiny1();
  for (int t = 0; t < 3; ++t) inst.resources[0].adjust(t, 1);
  CHECK(oracles::brute_force_optimum(inst) == 0);
  const auto r = solve_heuristic(inst, {}, starts({3, 0, 5}));
  CHECK(r.objective <= 2);
  CHECK(r.objective == 0);
}

TEST_CASE("heuristic: deterministic for a fixed seed") {
  std::mt19937_64 rng(4);
  for (int n = 0; n < 10; ++n) {
    const auto inst = fixtures::random_feasible_instance(rng);
    SolveLimits limits;
    limits.seed = 17;
    const auto a = solve_heuristic(inst, limits);
    const auto b = solve_heuristic(inst, limits);
    CHECK(a.schedule == b.schedule);
  }
}

TEST_CASE("heuristic: warm-start monotonicity on random instances") {
  std::mt19937_64 rng(8);
  for (int n = 0; n < 20; ++n) {
    const auto inst = fixtures::random_feasible_instance(rng);
    const auto cold = solve_heuristic(inst);
    // Perturb to a worse but feasible warm start via a reversed-order SGS.
    const auto g = precedence_graph(inst);
    std::vector<JobId> order = g.topological_order;
    const auto sgs = serial_sgs(inst, order);
    if (!sgs) continue;
    const auto warm = solve_heuristic(inst, {}, *sgs);
    CHECK(warm.objective <= objective(inst, *sgs));
    CHECK(validate(inst, warm.schedule).feasible());
    CHECK(cold.feasible);
  }
}

TEST_CASE("oracle agreement on small random instances") {
  std::mt19937_64 rng(2024);
  for (int n = 0; n < 15; ++n) {
    const auto inst = fixtures::random_instance(rng);
    const auto bf = oracles::brute_force_optimum(inst);
    const auto ex = solve_exact(inst);
    CHECK(ex.optimal);
    if (bf < 0) {
      CHECK_FALSE(ex.found);
      continue;
    }
    REQUIRE(ex.found);
    CHECK(ex.objective == bf);
    CHECK(oracles::feasible(inst, ex.schedule.starts));
    const auto h = solve_heuristic(inst);
    if (h.feasible) {
      CHECK(h.objective >= bf);
      CHECK(oracles::feasible(inst, h.schedule.starts));
    }
  }
}

TEST_CASE("serial SGS") {
  const auto inst = fixtures::tiny1();
  const auto s = serial_sgs(inst, {2, 1, 3});
  REQUIRE(s);
  CHECK(s->starts == std::vector<int>{3, 0, 5});
  const auto t = serial_sgs(inst, {1, 2, 3});
  REQUIRE(t);
  CHECK(t->starts == std::vector<int>{0, 2, 5});
}
