#include "mergecoord/model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace mergecoord {

const char* to_string(Movement m) {
  return m == Movement::kMain ? "main" : "ramp";
}

std::vector<const Vehicle*> Scenario::on(Movement m) const {
  std::vector<const Vehicle*> out;
  for (const Vehicle& v : vehicles) {
    if (v.movement == m) out.push_back(&v);
  }
  return out;
}

const Vehicle& Scenario::by_id(int id) const {
  for (const Vehicle& v : vehicles) {
    if (v.id == id) return v;
  }
  throw ContractViolation("no vehicle with id " + std::to_string(id));
}

std::size_t Scenario::count(Movement m) const {
  return static_cast<std::size_t>(
      std::count_if(vehicles.begin(), vehicles.end(),
                    [m](const Vehicle& v) { return v.movement == m; }));
}

std::vector<std::string> validate_config(const Params& p) {
  std::vector<std::string> bad;
  if (!(p.dt1 > 0.0)) bad.push_back("dt1 must be positive (dt1=" + std::to_string(p.dt1) + ")");
  if (!(p.dt2 > p.dt1))
    bad.push_back("dt2 must be greater than dt1 (dt2=" + std::to_string(p.dt2) +
                  ", dt1=" + std::to_string(p.dt1) + ")");
  if (!(p.a_min < 0.0)) bad.push_back("a_min must be negative (a_min=" + std::to_string(p.a_min) + ")");
  if (!(p.a_max > 0.0)) bad.push_back("a_max must be positive (a_max=" + std::to_string(p.a_max) + ")");
  if (!(p.v_min >= 0.0)) bad.push_back("v_min must be nonnegative (v_min=" + std::to_string(p.v_min) + ")");
  if (!(p.v_max > p.v_min))
    bad.push_back("v_max must be greater than v_min (v_max=" + std::to_string(p.v_max) +
                  ", v_min=" + std::to_string(p.v_min) + ")");
  if (!(p.w1 >= 0.0) || !(p.w2 >= 0.0))
    bad.push_back("weights w1 and w2 must be nonnegative (w1=" + std::to_string(p.w1) +
                  ", w2=" + std::to_string(p.w2) + ")");
  if (!(p.control_zone_length > 0.0))
    bad.push_back("L must be positive (L=" + std::to_string(p.control_zone_length) + ")");
  if (!(p.replan_period > 0.0))
    bad.push_back("T must be positive (T=" + std::to_string(p.replan_period) + ")");
  if (p.max_groups < 2)
    bad.push_back("max_groups must be at least 2 (max_groups=" + std::to_string(p.max_groups) + ")");
  if (!(p.threshold_init > 0.0))
    bad.push_back("threshold_init must be positive (threshold_init=" +
                  std::to_string(p.threshold_init) + ")");
  if (!(p.threshold_step > 0.0))
    bad.push_back("threshold_step must be positive (threshold_step=" +
                  std::to_string(p.threshold_step) + ")");
  return bad;
}

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> bad = validate_config(s.params);
  int last_id = 0;
  for (const Vehicle& v : s.vehicles) {
    if (v.id <= last_id)
      bad.push_back("vehicle ids must be positive and strictly increasing (saw " +
                    std::to_string(v.id) + " after " + std::to_string(last_id) + ")");
    last_id = v.id;
    if (v.position < 0.0)
      bad.push_back("vehicle " + std::to_string(v.id) + " has negative position");
    if (v.velocity < s.params.v_min || v.velocity > s.params.v_max)
      bad.push_back("vehicle " + std::to_string(v.id) + " velocity out of [v_min, v_max]");
    if (v.t_assign && *v.t_assign < v.t_min - 1e-9)
      bad.push_back("vehicle " + std::to_string(v.id) + " t_assign below t_min");
  }
  for (Movement m : {Movement::kMain, Movement::kRamp}) {
    const Vehicle* prev = nullptr;
    for (const Vehicle* v : s.on(m)) {
      if (prev && v->t_min < prev->t_min)
        bad.push_back(std::string("t_min not non-decreasing on ") + to_string(m) +
                      " between vehicles " + std::to_string(prev->id) + " and " +
                      std::to_string(v->id));
      prev = v;
    }
  }
  return bad;
}

double time_headway(const Vehicle& lead, const Vehicle& follow) {
  if (lead.movement != follow.movement)
    throw ContractViolation("time_headway requires vehicles on the same movement");
  if (follow.id <= lead.id)
    throw ContractViolation("time_headway requires follow.id > lead.id");
  return follow.t_min - lead.t_min;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Params load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  Params p;
  std::map<std::string, double*> real_keys = {
      {"dt1", &p.dt1}, {"dt2", &p.dt2}, {"a_min", &p.a_min}, {"a_max", &p.a_max},
      {"v_min", &p.v_min}, {"v_max", &p.v_max}, {"w1", &p.w1}, {"w2", &p.w2},
      {"L", &p.control_zone_length}, {"T", &p.replan_period},
      {"threshold_init", &p.threshold_init}, {"threshold_step", &p.threshold_step}};

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      std::size_t used = 0;
      if (key == "max_groups") {
        p.max_groups = std::stoi(value, &used);
      } else if (auto it = real_keys.find(key); it != real_keys.end()) {
        *it->second = std::stod(value, &used);
      } else {
        throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
      }
      if (used != value.size())
        throw ConfigError(path + ":" + std::to_string(lineno) + ": bad value '" + value + "'");
    } catch (const std::invalid_argument&) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": bad value '" + value + "'");
    } catch (const std::out_of_range&) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": value out of range '" + value + "'");
    }
  }
  return p;
}

}  // namespace mergecoord
