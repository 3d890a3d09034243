#include <doctest.h>

#include "bottleneck/indicators.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace bottleneck;
using fixtures::starts;

TEST_CASE("active periods") {
  const auto inst = fixtures::tiny1();
  const auto periods = active_periods(inst, starts({3, 0, 5}), 1);
  REQUIRE(periods.size() == 1);
  CHECK(periods[0] == ActivePeriod{1, 0, 6});
  CHECK(periods[0].last() == 5);

  CHECK(active_periods(fixtures::tiny2(), starts({3, 0, 5}), 2).empty());

  Instance gap;
  gap.resources = {constant_resource(1, 1)};
  gap.jobs = {fixtures::make_job(1, 2, {1}, 10, 1), fixtures::make_job(2, 1, {1}, 10, 1)};
  gap.horizon = 10;
  const auto two = active_periods(gap, starts({0, 3}), 1);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == ActivePeriod{1, 0, 2});
  CHECK(two[1] == ActivePeriod{1, 3, 4});
}

TEST_CASE("MRUR / PRU / AUAU on TINY-1") {
  const auto inst = fixtures::tiny1();
  const auto s = starts({3, 0, 5});
  CHECK(mrur(inst, s, 1).value == Rational(3, 4));
  CHECK(mrur(inst, s, 1).value == oracles::mrur(inst, s.starts, 1));
  const auto period = active_periods(inst, s, 1).front();
  CHECK(pru(inst, s, period).value == Rational(9, 12));
  CHECK(auau(inst, s, 1).value == Rational(3, 4));
}

TEST_CASE("indicator edge cases") {
  Instance one;
  one.resources = {constant_resource(1, 3), constant_resource(2, 2)};
  one.jobs = {fixtures::make_job(1, 1, {3, 0}, 5, 1)};
  one.horizon = 5;
  const auto s = starts({0});
  CHECK(mrur(one, s, 1).value == Rational(1));
  CHECK(mrur(one, s, 2).value == Rational(0));
  const auto idle = auau(one, s, 2);
  CHECK(idle.value == Rational(0));
  CHECK_FALSE(idle.defined);

  // capacity zero before C_max: undefined, reported as 0
  Instance off;
  Resource r;
  r.id = 1;
  r.base_pattern[5] = 1;
  off.resources = {r, constant_resource(2, 1)};
  off.jobs = {fixtures::make_job(1, 2, {0, 1}, 5, 1)};
  off.horizon = 5;
  const auto v = mrur(off, starts({0}), 1);
  CHECK_FALSE(v.defined);
  CHECK(v.value == Rational(0));
}

TEST_CASE("PRU counts overhanging jobs by start") {
  Instance inst;
  inst.resources = {constant_resource(1, 2)};
  inst.jobs = {fixtures::make_job(1, 2, {1}, 20, 1), fixtures::make_job(2, 2, {2}, 20, 1),
               fixtures::make_job(3, 3, {1}, 20, 1)};
  inst.horizon = 20;
  // job 3 starts at 1 inside [0,4) and overhangs? no gap: single period [0,4)
  const auto s = starts({0, 4, 1});
  const auto periods = active_periods(inst, s, 1);
  for (const auto& p : periods) {
    CHECK(pru(inst, s, p).value == oracles::pru(inst, s.starts, 1, {p.start, p.end}));
  }
  CHECK(auau(inst, s, 1).value == oracles::auau(inst, s.starts, 1));
}

TEST_CASE("AUAU is the mean of PRUs") {
  Instance inst;
  inst.resources = {constant_resource(1, 2)};
  inst.jobs = {fixtures::make_job(1, 2, {2}, 20, 1), fixtures::make_job(2, 2, {1}, 20, 1)};
  inst.horizon = 20;
  const auto s = starts({0, 5});
  CHECK(pru(inst, s, {1, 0, 2}).value == Rational(1));
  CHECK(pru(inst, s, {1, 5, 7}).value == Rational(1, 2));
  CHECK(auau(inst, s, 1).value == Rational(3, 4));
}

TEST_CASE("indicators match formula oracles on random schedules") {
  std::mt19937_64 rng(77);
  for (int n = 0; n < 20; ++n) {
    const auto inst = fixtures::random_feasible_instance(rng);
    const auto s = solve_heuristic(inst).schedule;
    for (const auto& r : inst.resources) {
      CHECK(mrur(inst, s, r.id).value == oracles::mrur(inst, s.starts, r.id));
      CHECK(auau(inst, s, r.id).value == oracles::auau(inst, s.starts, r.id));
      const auto periods = active_periods(inst, s, r.id);
      const auto runs = oracles::active_runs(inst, s.starts, r.id);
      REQUIRE(periods.size() == runs.size());
      for (std::size_t i = 0; i < runs.size(); ++i) {
        CHECK(periods[i].start == runs[i].first);
        CHECK(periods[i].end == runs[i].second);
        const auto v = pru(inst, s, periods[i]).value;
        CHECK(v == oracles::pru(inst, s.starts, r.id, runs[i]));
      }
    }
  }
}

TEST_CASE("MRUR = MUR and AUAU = AUAD at unit capacity and consumption") {
  std::mt19937_64 rng(31);
  for (int n = 0; n < 20; ++n) {
    fixtures::RandomSpec spec;
    spec.max_capacity = 1;
    auto inst = fixtures::random_instance(rng, spec);
    for (auto& r : inst.resources) r.base_pattern.fill(1);
    for (auto& job : inst.jobs) {
      for (auto& q : job.consumption) q = q > 0 ? 1 : 0;
    }
    const auto res = solve_heuristic(inst);
    if (!res.feasible) continue;
    for (const auto& r : inst.resources) {
      CHECK(mrur(inst, res.schedule, r.id).value == mur(inst, res.schedule, r.id).value);
      CHECK(auau(inst, res.schedule, r.id).value == auad(inst, res.schedule, r.id).value);
    }
  }
}

TEST_CASE("indicators are invariant under job relabeling") {
  // reverse the ids of TINY-1: jobs 3,2,1 -> precedences (3,1),(2,1)
  Instance inst;
  inst.resources = {constant_resource(1, 2)};
  inst.jobs = {fixtures::make_job(1, 1, {1}, 4, 1), fixtures::make_job(2, 3, {2}), fixtures::make_job(3, 2, {1})};
  inst.precedences = {{2, 1}, {3, 1}};
  inst.horizon = 24;
  const auto s = starts({5, 0, 3});
  CHECK(mrur(inst, s, 1).value == Rational(3, 4));
  CHECK(auau(inst, s, 1).value == Rational(3, 4));
}

TEST_CASE("rank resources") {
  const auto inst = fixtures::tiny2();
  const auto s = starts({3, 0, 5});
  for (auto ind : {Indicator::mrur, Indicator::auau, Indicator::mur, Indicator::auad}) {
    const auto ranking = rank_resources(inst, s, ind);
    REQUIRE(ranking.size() == 2);
    CHECK(ranking[0].resource == 1);
    CHECK(ranking[1].score.value == Rational(0));
  }
  CHECK(rank_resources(fixtures::tiny1(), s, Indicator::mrur).size() == 1);

  Instance twin;
  twin.resources = {constant_resource(1, 1), constant_resource(2, 1)};
  twin.jobs = {fixtures::make_job(1, 2, {1, 1}, 5, 1)};
  twin.horizon = 5;
  const auto ranking = rank_resources(twin, starts({0}), Indicator::mrur);
  CHECK(ranking[0].resource == 1);
  CHECK(ranking[1].resource == 2);

  CHECK(parse_indicator("AUAU") == Indicator::auau);
  CHECK(indicator_name(Indicator::mur) == "MUR");
  CHECK_THROWS(parse_indicator("foo"));
}
