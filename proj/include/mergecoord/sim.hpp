#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "mergecoord/kinematics.hpp"
#include "mergecoord/strategies.hpp"

namespace mergecoord {

enum class Strategy { kPlanning = 0, kFifo = 1, kGrouping = 2 };

const char* to_string(Strategy s);
std::optional<Strategy> strategy_from_name(const std::string& name);

struct Arrival {
  double entry_time = 0.0;      // s
  double entry_velocity = 0.0;  // m/s
};

struct ArrivalStream {
  std::vector<Arrival> main;
  std::vector<Arrival> ramp;

  std::size_t total() const { return main.size() + ramp.size(); }
};

/// Poisson-style arrivals per movement with displaced-exponential gaps
/// (mean 1/lambda, displacement dt1). lambda = 0 yields an empty stream;
/// lambda >= 1/dt1 is infeasible. Deterministic given seed.
ArrivalStream generate_arrivals(double lambda1, double lambda2, double duration,
                                const Params& p, std::uint64_t seed);

/// Per-movement streams with exact vehicle counts instead of a duration.
ArrivalStream generate_fixed_counts(double lambda1, double lambda2, std::size_t n1,
                                    std::size_t n2, const Params& p, std::uint64_t seed);

/// Static scheduling scenario from arrival streams: vehicles in entry order
/// at the control-zone boundary, t_min from the minimum-time profile over L.
/// Keeps at most max_vehicles (earliest entries first).
Scenario scenario_from_arrivals(const ArrivalStream& stream, const Params& p,
                                std::size_t max_vehicles =
                                    std::numeric_limits<std::size_t>::max());

struct ReplanRecord {
  double sim_time = 0.0;
  int n_vehicles = 0;
  Strategy strategy = Strategy::kGrouping;
  double objective = 0.0;
  double wallclock_ms = 0.0;
};

struct MetricsReport {
  double average_delay = 0.0;          // s/veh over completed vehicles
  double average_plan_time_ms = 0.0;   // wall clock per replan
  double average_vehicle_count = 0.0;  // in-zone vehicles per replan
  std::uint64_t vehicles_entered = 0;
  std::uint64_t vehicles_completed = 0;
  std::uint64_t frozen_holds = 0;  // vehicle-replans held out as frozen
  std::vector<ReplanRecord> replans;
};

/// What a replan is about to solve: the free vehicles (current kinematic
/// states, recomputed floors) plus the held vehicles scheduled around.
struct ReplanSnapshot {
  double sim_time = 0.0;
  Scenario to_solve;
  std::vector<Vehicle> frozen;
};

struct SimOptions {
  double dt_sim = 0.1;  // s
  std::uint64_t order_budget = kDefaultOrderBudget;
  std::optional<double> entry_velocity;  // default: v_max
  std::function<void(const ReplanSnapshot&)> replan_observer;
};

/// Rolling-horizon simulation: seeded arrivals enter a control zone of
/// length L, all in-zone vehicles are rescheduled by the chosen strategy
/// every replan_period seconds (minimum access times recomputed from current
/// states), motion plans realize the assigned times, and vehicles leave at
/// them. Deterministic given (seed, params, strategy) except wall-clock
/// fields. Budget errors from the strategy propagate with sim-time context.
MetricsReport simulate(double lambda1, double lambda2, double duration,
                       Strategy strategy, const Params& p, std::uint64_t seed,
                       const SimOptions& opts = {});

}  // namespace mergecoord
