#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "mergecoord/model.hpp"

using namespace mergecoord;

namespace {

Vehicle veh(int id, Movement m, double t_min) {
  Vehicle v;
  v.id = id;
  v.movement = m;
  v.t_min = t_min;
  v.velocity = 10.0;
  return v;
}

}  // namespace

TEST_CASE("default params are valid") {
  CHECK(validate_config(Params{}).empty());
}

TEST_CASE("validate_config names the violated field") {
  Params p;
  p.dt1 = 2.0;
  p.dt2 = 1.5;
  auto bad = validate_config(p);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].find("dt2") != std::string::npos);

  Params q;
  q.w1 = -0.5;
  bad = validate_config(q);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].find("nonnegative") != std::string::npos);

  Params r;
  r.a_min = 1.0;
  r.max_groups = 1;
  bad = validate_config(r);
  CHECK(bad.size() == 2);
}

TEST_CASE("time_headway is the t_min difference") {
  CHECK(time_headway(veh(1, Movement::kMain, 10.0), veh(2, Movement::kMain, 11.2)) ==
        doctest::Approx(1.2));
  CHECK(time_headway(veh(1, Movement::kMain, 10.0), veh(2, Movement::kMain, 10.0)) == 0.0);
  CHECK(time_headway(veh(1, Movement::kMain, 10.0), veh(3, Movement::kMain, 15.0)) ==
        doctest::Approx(5.0));
}

TEST_CASE("time_headway rejects mixed movements and bad id order") {
  CHECK_THROWS_AS(time_headway(veh(1, Movement::kMain, 10.0), veh(2, Movement::kRamp, 11.0)),
                  ContractViolation);
  CHECK_THROWS_AS(time_headway(veh(2, Movement::kMain, 10.0), veh(1, Movement::kMain, 11.0)),
                  ContractViolation);
}

TEST_CASE("scenario validation flags id order, lane monotonicity, velocity bounds") {
  Scenario s;
  s.vehicles = {veh(1, Movement::kMain, 10.0), veh(2, Movement::kMain, 11.0),
                veh(3, Movement::kRamp, 9.0)};
  CHECK(validate_scenario(s).empty());

  Scenario bad_ids = s;
  bad_ids.vehicles[1].id = 1;
  CHECK_FALSE(validate_scenario(bad_ids).empty());

  Scenario bad_lane = s;
  bad_lane.vehicles[1].t_min = 8.0;  // behind vehicle 1 on the same lane
  CHECK_FALSE(validate_scenario(bad_lane).empty());

  Scenario bad_v = s;
  bad_v.vehicles[0].velocity = 99.0;
  CHECK_FALSE(validate_scenario(bad_v).empty());
}

TEST_CASE("scenario accessors") {
  Scenario s;
  s.vehicles = {veh(1, Movement::kMain, 10.0), veh(2, Movement::kRamp, 11.0),
                veh(3, Movement::kMain, 12.0)};
  CHECK(s.count(Movement::kMain) == 2);
  CHECK(s.count(Movement::kRamp) == 1);
  CHECK(s.on(Movement::kMain).size() == 2);
  CHECK(s.by_id(2).movement == Movement::kRamp);
  CHECK_THROWS_AS(s.by_id(9), ContractViolation);
}

TEST_CASE("load_params reads a flat key=value file") {
  const char* path = "test_params.conf";
  {
    std::ofstream f(path);
    f << "# comment line\n"
      << "dt1 = 1.2\n"
      << "dt2 = 2.5   # trailing comment\n"
      << "L = 120\n"
      << "max_groups = 8\n";
  }
  Params p = load_params(path);
  CHECK(p.dt1 == doctest::Approx(1.2));
  CHECK(p.dt2 == doctest::Approx(2.5));
  CHECK(p.control_zone_length == doctest::Approx(120.0));
  CHECK(p.max_groups == 8);
  CHECK(p.v_max == doctest::Approx(10.0));  // untouched default
  std::remove(path);
}

TEST_CASE("load_params rejects unknown keys and bad values") {
  const char* path = "test_params_bad.conf";
  {
    std::ofstream f(path);
    f << "dt3 = 1.0\n";
  }
  CHECK_THROWS_AS(load_params(path), ConfigError);
  {
    std::ofstream f(path);
    f << "dt1 = abc\n";
  }
  CHECK_THROWS_AS(load_params(path), ConfigError);
  CHECK_THROWS_AS(load_params("no_such_file.conf"), ConfigError);
  std::remove(path);
}
