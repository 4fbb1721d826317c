#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mergecoord/errors.hpp"

namespace mergecoord {

/// The two conflicting movements through the merging zone.
enum class Movement { kMain = 0, kRamp = 1 };

inline bool same_movement(Movement a, Movement b) { return a == b; }
const char* to_string(Movement m);

struct Vehicle {
  int id = 0;                      // entry-order identity, positive
  Movement movement = Movement::kMain;
  double entry_time = 0.0;         // s, absolute time of control-zone entry
  double position = 0.0;           // m remaining to the merging-zone entry
  double velocity = 0.0;           // m/s
  double t_min = 0.0;              // s, absolute minimum access time
  std::optional<double> t_assign;  // s, absolute assigned access time
};

/// Scheduling constants and experiment knobs. Defaults follow the reference
/// setup: 1.5 s same-lane gap, 2 s conflict gap, |a| <= 3 m/s^2, v in [0, 10].
struct Params {
  double dt1 = 1.5;    // s, minimum gap between same-movement vehicles
  double dt2 = 2.0;    // s, minimum gap between conflict-movement vehicles
  double a_min = -3.0; // m/s^2
  double a_max = 3.0;  // m/s^2
  double v_min = 0.0;  // m/s
  double v_max = 10.0; // m/s
  double w1 = 0.5;     // objective weight on the latest assigned time
  double w2 = 0.5;     // objective weight on the summed delay
  double control_zone_length = 150.0;  // m (config key "L")
  double replan_period = 2.0;          // s (config key "T")
  int max_groups = 12;
  double threshold_init = 1.5;  // s, initial grouping threshold
  double threshold_step = 0.1;  // s, threshold increment per regrouping pass
};

/// A static scheduling problem: constants plus vehicles listed in entry order.
struct Scenario {
  Params params;
  std::vector<Vehicle> vehicles;

  std::vector<const Vehicle*> on(Movement m) const;
  const Vehicle& by_id(int id) const;  // throws ContractViolation when absent
  std::size_t count(Movement m) const;
};

/// Returns one human-readable description per violated Params invariant.
/// An empty result means the configuration is valid.
std::vector<std::string> validate_config(const Params& p);

/// Params invariants plus the Scenario ones: ids strictly increasing and
/// per-movement t_min non-decreasing in id order.
std::vector<std::string> validate_scenario(const Scenario& s);

/// Headway between two same-movement vehicles, as the difference of their
/// minimum access times. Requires follow.id > lead.id on the same movement.
double time_headway(const Vehicle& lead, const Vehicle& follow);

/// Loads Params from a flat key=value text file ('#' starts a comment).
/// Recognized keys: dt1 dt2 a_min a_max v_min v_max w1 w2 L T max_groups
/// threshold_init threshold_step. Unknown keys raise ConfigError.
Params load_params(const std::string& path);

}  // namespace mergecoord
