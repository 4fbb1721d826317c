#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "mergecoord/rng.hpp"
#include "mergecoord/scheduling.hpp"

using namespace mergecoord;

namespace {

Scenario four_vehicle_fixture() {
  // A, B, D on the main lane (t_min 10, 11, 13), C on the ramp (t_min 12).
  Scenario s;
  s.vehicles = {
      {1, Movement::kMain, 0, 0, 10.0, 10.0, {}},
      {2, Movement::kMain, 0, 0, 10.0, 11.0, {}},
      {3, Movement::kRamp, 0, 0, 10.0, 12.0, {}},
      {4, Movement::kMain, 0, 0, 10.0, 13.0, {}},
  };
  return s;
}

Scenario random_scenario(std::mt19937_64& rng, std::size_t n_main, std::size_t n_ramp) {
  Scenario s;
  int id = 0;
  double t = 0.0;
  for (std::size_t i = 0; i < n_main; ++i) {
    t += 1.5 + 6.0 * canonical(rng);
    s.vehicles.push_back({++id, Movement::kMain, 0, 0, 10.0, t, {}});
  }
  t = 0.0;
  for (std::size_t i = 0; i < n_ramp; ++i) {
    t += 1.5 + 6.0 * canonical(rng);
    s.vehicles.push_back({++id, Movement::kRamp, 0, 0, 10.0, t, {}});
  }
  std::sort(s.vehicles.begin(), s.vehicles.end(),
            [](const Vehicle& a, const Vehicle& b) { return a.t_min < b.t_min; });
  for (std::size_t i = 0; i < s.vehicles.size(); ++i)
    s.vehicles[i].id = static_cast<int>(i) + 1;
  return s;
}

}  // namespace

TEST_CASE("schedule_order hand-traced four-vehicle fixtures") {
  const Scenario s = four_vehicle_fixture();

  const Schedule abcd = schedule_order(s, {{1, 2, 3, 4}});
  CHECK(abcd.t_assign.at(1) == doctest::Approx(10.0));
  CHECK(abcd.t_assign.at(2) == doctest::Approx(11.5));
  CHECK(abcd.t_assign.at(3) == doctest::Approx(13.5));
  CHECK(abcd.t_assign.at(4) == doctest::Approx(15.5));
  CHECK(abcd.objective == doctest::Approx(10.0));

  const Schedule acbd = schedule_order(s, {{1, 3, 2, 4}});
  CHECK(acbd.t_assign.at(3) == doctest::Approx(12.0));
  CHECK(acbd.t_assign.at(2) == doctest::Approx(14.0));
  CHECK(acbd.t_assign.at(4) == doctest::Approx(15.5));
  CHECK(acbd.objective == doctest::Approx(10.5));
}

TEST_CASE("schedule_order: single vehicle") {
  Scenario s;
  s.vehicles = {{1, Movement::kRamp, 0, 0, 10.0, 7.0, {}}};
  const Schedule sched = schedule_order(s, {{1}});
  CHECK(sched.t_assign.at(1) == doctest::Approx(7.0));
  CHECK(sched.delays.at(1) == doctest::Approx(0.0));
  CHECK(sched.objective == doctest::Approx(s.params.w1 * 7.0));
}

TEST_CASE("schedule_order rejects invalid orders") {
  const Scenario s = four_vehicle_fixture();
  CHECK_THROWS_AS(schedule_order(s, {{1, 2, 3}}), InvalidOrderError);       // missing
  CHECK_THROWS_AS(schedule_order(s, {{1, 2, 3, 3}}), InvalidOrderError);    // duplicate
  CHECK_THROWS_AS(schedule_order(s, {{2, 1, 3, 4}}), InvalidOrderError);    // lane order
  CHECK_THROWS_AS(schedule_order(s, {{1, 2, 3, 9}}), InvalidOrderError);    // unknown id
}

TEST_CASE("interleaving_count exact values") {
  CHECK(interleaving_count(12, 13) == 5200300);
  CHECK(interleaving_count(0, 5) == 1);
  CHECK(interleaving_count(5, 0) == 1);
  CHECK(interleaving_count(2, 2) == 6);
  CHECK(interleaving_count(0, 0) == 1);
  CHECK(interleaving_count(33, 33) == 7219428434016265740ULL);
}

TEST_CASE("interleaving_count overflow is an explicit error") {
  CHECK_THROWS_AS(interleaving_count(34, 34), OverflowError);
  CHECK_THROWS_AS(interleaving_count(100, 100), OverflowError);
}

TEST_CASE("enumerate_interleavings small fixtures in lexicographic order") {
  Scenario s;
  s.vehicles = {
      {1, Movement::kMain, 0, 0, 10.0, 1.0, {}},
      {2, Movement::kMain, 0, 0, 10.0, 2.0, {}},
      {3, Movement::kRamp, 0, 0, 10.0, 1.5, {}},
  };
  const auto orders = all_interleavings(s);
  REQUIRE(orders.size() == 3);
  CHECK(orders[0].sequence == std::vector<int>{1, 2, 3});
  CHECK(orders[1].sequence == std::vector<int>{1, 3, 2});
  CHECK(orders[2].sequence == std::vector<int>{3, 1, 2});
}

TEST_CASE("enumerate_interleavings: the four orders of the A,B,D + C scenario") {
  const Scenario s = four_vehicle_fixture();
  const auto orders = all_interleavings(s);
  REQUIRE(orders.size() == 4);
  CHECK(orders[0].sequence == std::vector<int>{1, 2, 4, 3});  // ABDC
  CHECK(orders[1].sequence == std::vector<int>{1, 2, 3, 4});  // ABCD
  CHECK(orders[2].sequence == std::vector<int>{1, 3, 2, 4});  // ACBD
  CHECK(orders[3].sequence == std::vector<int>{3, 1, 2, 4});  // CABD
}

TEST_CASE("enumerate_interleavings: one empty movement yields the lane sequence") {
  Scenario s;
  s.vehicles = {
      {1, Movement::kRamp, 0, 0, 10.0, 1.0, {}},
      {2, Movement::kRamp, 0, 0, 10.0, 3.0, {}},
  };
  const auto orders = all_interleavings(s);
  REQUIRE(orders.size() == 1);
  CHECK(orders[0].sequence == std::vector<int>{1, 2});
}

TEST_CASE("enumeration completeness property") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n1 = rng() % 7;
    const std::size_t n2 = rng() % 7;
    const Scenario s = random_scenario(rng, n1, n2);
    std::set<std::vector<int>> seen;
    enumerate_interleavings(s, [&](const PassingOrder& order) {
      CHECK(seen.insert(order.sequence).second);  // no duplicates
      CHECK_NOTHROW(schedule_order(s, order));    // lane-order valid
      return true;
    });
    CHECK(seen.size() == interleaving_count(n1, n2));
  }
}

TEST_CASE("for_each_objective agrees with schedule_order on every order") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Scenario s = random_scenario(rng, 1 + rng() % 5, 1 + rng() % 5);
    std::vector<double> fast;
    for_each_objective(s, [&](double j) { fast.push_back(j); });
    std::vector<double> slow;
    enumerate_interleavings(s, [&](const PassingOrder& order) {
      slow.push_back(schedule_order(s, order).objective);
      return true;
    });
    REQUIRE(fast.size() == slow.size());
    for (std::size_t i = 0; i < fast.size(); ++i)
      CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-12));
  }
}

TEST_CASE("schedule property: all pairwise gaps hold and assignments are tight") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Scenario s = random_scenario(rng, 1 + rng() % 4, 1 + rng() % 4);
    const auto orders = all_interleavings(s);
    const PassingOrder& order = orders[rng() % orders.size()];
    const Schedule sched = schedule_order(s, order);

    // Safety gaps hold for every pair, not only consecutive ones.
    for (std::size_t i = 0; i < order.sequence.size(); ++i) {
      for (std::size_t j = i + 1; j < order.sequence.size(); ++j) {
        const Vehicle& a = s.by_id(order.sequence[i]);
        const Vehicle& b = s.by_id(order.sequence[j]);
        const double gap = a.movement == b.movement ? s.params.dt1 : s.params.dt2;
        CHECK(sched.t_assign.at(b.id) - sched.t_assign.at(a.id) >= gap - 1e-9);
      }
      CHECK(sched.delays.at(order.sequence[i]) >= -1e-12);
    }

    // Monotone along the order.
    for (std::size_t i = 1; i < order.sequence.size(); ++i)
      CHECK(sched.t_assign.at(order.sequence[i]) > sched.t_assign.at(order.sequence[i - 1]));

    // Greedy tightness: no single assignment can be decreased by 1e-6.
    for (std::size_t i = 0; i < order.sequence.size(); ++i) {
      const Vehicle& v = s.by_id(order.sequence[i]);
      const double probe = sched.t_assign.at(v.id) - 1e-6;
      bool feasible = probe >= v.t_min;
      if (i > 0) {
        const Vehicle& prev = s.by_id(order.sequence[i - 1]);
        const double gap = prev.movement == v.movement ? s.params.dt1 : s.params.dt2;
        feasible = feasible && (probe - sched.t_assign.at(prev.id) >= gap);
      }
      CHECK_FALSE(feasible);
    }
  }
}
