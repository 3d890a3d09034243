#include <doctest.h>

#include <numeric>

#include "bottleneck/iira.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace bottleneck;
using fixtures::starts;

namespace {
void check_close(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]));
}
}  // namespace

TEST_CASE("granular load") {
  const auto inst = fixtures::tiny1();
  const auto g = granular_load(inst, starts({3, 0, 5}), 1, 2);
  REQUIRE(g.size() == 12);
  CHECK(g[0] == Rational(1));
  CHECK(g[1] == Rational(3, 4));
  CHECK(g[2] == Rational(1, 2));
  for (std::size_t i = 3; i < g.size(); ++i) CHECK(g[i] == Rational(0));

  const auto idle = granular_load(fixtures::tiny2(), starts({3, 0, 5}), 2, 5);
  CHECK(idle.size() == 5);  // ceil(24 / 5)
  for (const auto& v : idle) CHECK(v == Rational(0));

  const auto unit = granular_load(inst, starts({3, 0, 5}), 1, 1);
  CHECK(unit[0] == Rational(1));
  CHECK(unit[3] == Rational(1, 2));
}

TEST_CASE("granular load is zero on blocks without capacity") {
  auto inst = fixtures::two_shift_fixture();
  const auto g = granular_load(inst, fixtures::two_shift_schedule(), 1, 4);
  CHECK(g[0] == Rational(0));  // [0,4) off shift
  CHECK(g[3] == Rational(1));  // [12,16): R1 on only at 12, 13
}

TEST_CASE("kernels and improvement potential") {
  CHECK(Kernel{Kernel::Family::uniform, 0}.weights() == std::vector<double>{1.0});
  check_close(Kernel{Kernel::Family::uniform, 1}.weights(), {1.0 / 3, 1.0 / 3, 1.0 / 3});
  check_close(Kernel{Kernel::Family::triangular, 1}.weights(), {0.25, 0.5, 0.25});
  check_close(improvement_potential({1, 0, 0}, Kernel{Kernel::Family::uniform, 1}), {1.0 / 3, 1.0 / 3, 0});
  check_close(improvement_potential({0.2, 0.5, 0.9}, Kernel{}), {0.2, 0.5, 0.9});
  const auto c = improvement_potential({1, 1, 1, 1, 1}, Kernel{Kernel::Family::triangular, 1});
  check_close(c, {0.75, 1, 1, 1, 0.75});
  CHECK(Kernel::parse("triangular3").name() == "triangular3");
  CHECK(Kernel::parse("identity").half_width == 0);
  CHECK_THROWS(Kernel::parse("gauss2"));
}

TEST_CASE("block selection picks the largest, earliest first") {
  CHECK(select_blocks({0.5, 0.9, 0.9, 0.1}, 1) == std::vector<int>{1});
  CHECK(select_blocks({0.5, 0.9, 0.9, 0.1}, 2) == std::vector<int>{1, 2});
  CHECK(select_blocks({0.5, 0.9, 0.1, 0.9}, 3) == std::vector<int>{0, 1, 3});
  CHECK(select_blocks({0.1, 0.2}, 5) == std::vector<int>{0, 1});
  // float noise below the quantum counts as a tie
  CHECK(select_blocks({1.0 / 3 + 1e-15, 1.0 / 3}, 1) == std::vector<int>{0});
  CHECK(select_blocks({1.0 / 3, 1.0 / 3 + 1e-15}, 1) == std::vector<int>{0});
}

TEST_CASE("identity kernel at G=1 selects the highest-utilization periods") {
  std::mt19937_64 rng(12);
  for (int n = 0; n < 10; ++n) {
    const auto inst = fixtures::random_feasible_instance(rng);
    const auto s = solve_heuristic(inst).schedule;
    const auto load = granular_load(inst, s, 1, 1);
    std::vector<double> d;
    for (const auto& r : load) d.push_back(r.to_double());
    const auto picked = select_blocks(improvement_potential(d, Kernel{}), 3);
    std::vector<int> idx(load.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return load[static_cast<std::size_t>(a)] > load[static_cast<std::size_t>(b)]; });
    std::vector<int> expect(idx.begin(), idx.begin() + 3);
    std::sort(expect.begin(), expect.end());
    CHECK(picked == expect);
  }
}

TEST_CASE("params validation") {
  IiraParams p;
  CHECK_NOTHROW(p.check());
  p.capacity_step = 0;
  CHECK_THROWS_AS(p.check(), std::invalid_argument);
  p = {};
  p.granularity = 0;
  CHECK_THROWS_AS(p.check(), std::invalid_argument);
  p = {};
  p.indicator = Indicator::mur;
  CHECK_THROWS_AS(p.check(), std::invalid_argument);
}

TEST_CASE("IIRA on TINY-1") {
  const auto inst = fixtures::tiny1();
  IiraParams p;
  p.granularity = 2;
  const auto run = run_iira(inst, starts({3, 0, 5}), p, 3);
  REQUIRE(run.iterations.size() == 1);
  const auto& prop = run.final_proposal;
  CHECK(completion(prop.instance, prop.schedule, 3) == 4);
  CHECK(prop.metrics.delta_tardiness == 2);
  CHECK(prop.changes.migrations.empty());
  CHECK(prop.changes.additions == std::vector<CapacityAddition>{{1, 0, 2, 1}});
  CHECK(validate(prop.instance, prop.schedule).feasible());
}

TEST_CASE("IIRA with a large step reaches the precedence bound") {
  const auto inst = fixtures::tiny1();
  IiraParams p;
  p.granularity = 24;
  p.capacity_step = 10;
  const auto run = run_iira(inst, starts({3, 0, 5}), p, 3);
  CHECK(objective(run.final_proposal.instance, run.final_proposal.schedule) == 0);
  CHECK(completion(run.final_proposal.instance, run.final_proposal.schedule, 3) == 4);
}

TEST_CASE("IIRA bottleneck stays on the loaded resource") {
  const auto inst = fixtures::tiny2();
  IiraParams p;
  p.iterations = 3;
  const auto run = run_iira(inst, starts({3, 0, 5}), p, 3);
  for (const auto& it : run.iterations) {
    for (const auto& a : it.changes.additions) CHECK(a.resource == 1);
    for (const auto& m : it.changes.migrations) CHECK(m.to == 1);
  }
}

TEST_CASE("IIRA objective never worsens across iterations") {
  std::mt19937_64 rng(44);
  for (int n = 0; n < 10; ++n) {
    const auto inst = fixtures::random_feasible_instance(rng);
    const auto base = solve_heuristic(inst).schedule;
    IiraParams p;
    p.iterations = 3;
    p.improvement_periods = 2;
    p.kernel = Kernel{Kernel::Family::triangular, 1};
    const auto run = run_iira(inst, base, p, default_target(inst, base));
    std::int64_t prev = objective(inst, base);
    for (const auto& it : run.iterations) {
      const auto cur = objective(it.instance, it.schedule);
      CHECK(cur <= prev);
      prev = cur;
      CHECK(validate(it.instance, it.schedule).feasible());
    }
  }
}
