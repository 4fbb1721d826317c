#include "mergecoord/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "mergecoord/analysis.hpp"
#include "mergecoord/rng.hpp"

namespace mergecoord {

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::kPlanning: return "planning";
    case Strategy::kFifo: return "fifo";
    case Strategy::kGrouping: return "grouping";
  }
  return "?";
}

std::optional<Strategy> strategy_from_name(const std::string& name) {
  if (name == "planning") return Strategy::kPlanning;
  if (name == "fifo") return Strategy::kFifo;
  if (name == "grouping") return Strategy::kGrouping;
  return std::nullopt;
}

namespace {

std::vector<Arrival> sample_stream(double lambda, double duration, const Params& p,
                                   std::uint64_t seed, double entry_velocity) {
  std::vector<Arrival> out;
  if (lambda == 0.0) return out;
  const HeadwayModel model = HeadwayModel::from_rate(lambda, p.dt1);
  std::mt19937_64 rng(seed);
  double t = 0.0;
  for (;;) {
    t += sample_displaced_exponential(rng, model.h_bar, model.tau);
    if (t > duration) break;
    out.push_back({t, entry_velocity});
  }
  return out;
}

std::vector<Arrival> sample_fixed(double lambda, std::size_t n, const Params& p,
                                  std::uint64_t seed, double entry_velocity) {
  std::vector<Arrival> out;
  if (n == 0) return out;
  const HeadwayModel model = HeadwayModel::from_rate(lambda, p.dt1);
  std::mt19937_64 rng(seed);
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    t += sample_displaced_exponential(rng, model.h_bar, model.tau);
    out.push_back({t, entry_velocity});
  }
  return out;
}

}  // namespace

ArrivalStream generate_arrivals(double lambda1, double lambda2, double duration,
                                const Params& p, std::uint64_t seed) {
  ArrivalStream stream;
  stream.main = sample_stream(lambda1, duration, p, derive_seed(seed, 0), p.v_max);
  stream.ramp = sample_stream(lambda2, duration, p, derive_seed(seed, 1), p.v_max);
  return stream;
}

ArrivalStream generate_fixed_counts(double lambda1, double lambda2, std::size_t n1,
                                    std::size_t n2, const Params& p, std::uint64_t seed) {
  ArrivalStream stream;
  stream.main = sample_fixed(lambda1, n1, p, derive_seed(seed, 0), p.v_max);
  stream.ramp = sample_fixed(lambda2, n2, p, derive_seed(seed, 1), p.v_max);
  return stream;
}

Scenario scenario_from_arrivals(const ArrivalStream& stream, const Params& p,
                                std::size_t max_vehicles) {
  struct Entry {
    const Arrival* arrival;
    Movement movement;
  };
  std::vector<Entry> entries;
  entries.reserve(stream.total());
  for (const Arrival& a : stream.main) entries.push_back({&a, Movement::kMain});
  for (const Arrival& a : stream.ramp) entries.push_back({&a, Movement::kRamp});
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.arrival->entry_time < b.arrival->entry_time;
  });
  if (entries.size() > max_vehicles) entries.resize(max_vehicles);

  Scenario s;
  s.params = p;
  int id = 0;
  for (const Entry& e : entries) {
    Vehicle v;
    v.id = ++id;
    v.movement = e.movement;
    v.entry_time = e.arrival->entry_time;
    v.position = p.control_zone_length;
    v.velocity = e.arrival->entry_velocity;
    v.t_min = min_access_time(v.position, v.velocity, v.entry_time, p);
    s.vehicles.push_back(v);
  }
  return s;
}

namespace {

struct ActiveVehicle {
  Vehicle state;          // id, movement, entry data
  double t_min_entry;     // delay baseline, fixed at control-zone entry
  double t_assign;        // current assignment, absolute s
  MotionPlan plan;
  double plan_x0, plan_v0, plan_t0;  // state the plan was issued from

  KinematicState at(double t) const {
    return sample_state(plan, plan_x0, plan_v0, plan_t0, std::min(t, plan.t_arrive));
  }
};

Schedule run_strategy(Strategy strategy, const Scenario& sc, std::uint64_t budget) {
  switch (strategy) {
    case Strategy::kPlanning: return solve_planning(sc, true, budget);
    case Strategy::kFifo: return solve_fifo(sc);
    case Strategy::kGrouping: return solve_grouping(sc);
  }
  throw ContractViolation("unknown strategy");
}

}  // namespace

MetricsReport simulate(double lambda1, double lambda2, double duration,
                       Strategy strategy, const Params& p, std::uint64_t seed,
                       const SimOptions& opts) {
  {
    const std::vector<std::string> bad = validate_config(p);
    if (!bad.empty()) throw ContractViolation("invalid params: " + bad.front());
  }
  if (!(duration > 0.0)) throw ContractViolation("duration must be positive");

  const double entry_v =
      std::clamp(opts.entry_velocity.value_or(p.v_max), p.v_min, p.v_max);
  ArrivalStream stream = generate_arrivals(lambda1, lambda2, duration, p, seed);
  if (opts.entry_velocity)
    for (auto* lane : {&stream.main, &stream.ramp})
      for (Arrival& a : *lane) a.entry_velocity = entry_v;

  // Entry feed sorted by arrival time; ids in entry order.
  Scenario feed = scenario_from_arrivals(stream, p);
  std::size_t next_entry = 0;
  double last_entry_time[2] = {-std::numeric_limits<double>::infinity(),
                               -std::numeric_limits<double>::infinity()};

  std::vector<ActiveVehicle> active;
  MetricsReport report;
  double delay_sum = 0.0;

  const double dt = opts.dt_sim;
  const long replan_every = std::max(1L, std::lround(p.replan_period / dt));
  const long steps = std::lround(std::ceil(duration / dt));

  for (long k = 0; k <= steps; ++k) {
    const double now = k * dt;

    // Entries: an arrival is held upstream until dt1 after its lane
    // predecessor's entry, then appended behind every current assignment.
    while (next_entry < feed.vehicles.size()) {
      const Vehicle& v = feed.vehicles[next_entry];
      const int lane = static_cast<int>(v.movement);
      const double entry_at = std::max(v.entry_time, last_entry_time[lane] + p.dt1);
      if (entry_at > now) break;
      ActiveVehicle av;
      av.state = v;
      av.state.entry_time = entry_at;
      av.state.position = p.control_zone_length;
      av.state.velocity = v.velocity;
      av.t_min_entry = min_access_time(av.state.position, av.state.velocity, entry_at, p);
      av.state.t_min = av.t_min_entry;
      double t0 = av.t_min_entry;
      for (const ActiveVehicle& other : active) {
        const double gap = other.state.movement == av.state.movement ? p.dt1 : p.dt2;
        t0 = std::max(t0, other.t_assign + gap);
      }
      av.t_assign = t0;
      av.state.t_assign = t0;
      av.plan_x0 = av.state.position;
      av.plan_v0 = av.state.velocity;
      av.plan_t0 = entry_at;
      av.plan = plan_motion(av.plan_x0, av.plan_v0, av.plan_t0, t0, p);
      active.push_back(std::move(av));
      last_entry_time[lane] = entry_at;
      ++report.vehicles_entered;
      ++next_entry;
    }

    // Exits.
    for (auto it = active.begin(); it != active.end();) {
      if (it->t_assign <= now + 1e-12) {
        delay_sum += it->t_assign - it->t_min_entry;
        ++report.vehicles_completed;
        it = active.erase(it);
      } else {
        ++it;
      }
    }

    if (k % replan_every != 0) continue;

    // Replan from current kinematic states. Vehicles that are about to merge
    // (assignment within one period) or are inside their braking distance
    // (cannot stop upstream, so no later arrival is realizable) hold their
    // assignment; the rest are re-optimized around them.
    ReplanSnapshot snap;
    snap.sim_time = now;
    snap.to_solve.params = p;
    std::vector<std::size_t> free_index;
    struct FreeState {
      double position;
      double velocity;
    };
    std::vector<FreeState> free_state;
    for (std::size_t i = 0; i < active.size(); ++i) {
      ActiveVehicle& av = active[i];
      const KinematicState ks = av.at(now);
      const double v_now = std::clamp(ks.velocity, p.v_min, p.v_max);
      const double braking_distance = 0.5 * v_now * v_now / -p.a_min;
      if (av.t_assign - now <= p.replan_period || ks.position < braking_distance) {
        Vehicle held = av.state;
        held.position = ks.position;
        held.velocity = v_now;
        held.t_assign = av.t_assign;
        snap.frozen.push_back(held);
        continue;
      }
      free_index.push_back(i);
      free_state.push_back({ks.position, v_now});
    }
    report.frozen_holds += snap.frozen.size();

    double lane_floor[2] = {-std::numeric_limits<double>::infinity(),
                            -std::numeric_limits<double>::infinity()};
    for (std::size_t j = 0; j < free_index.size(); ++j) {
      ActiveVehicle& av = active[free_index[j]];
      Vehicle v = av.state;
      v.position = free_state[j].position;
      v.velocity = free_state[j].velocity;
      double t_min = min_access_time(v.position, v.velocity, now, p);
      // Held vehicles are fixed obstacles: every free vehicle is floored
      // behind all of them, so no reordering can breach their gaps.
      for (const Vehicle& held : snap.frozen) {
        const double gap = held.movement == v.movement ? p.dt1 : p.dt2;
        t_min = std::max(t_min, *held.t_assign + gap);
      }
      // A follower cannot pass its leader: keep per-lane t_min monotone.
      const int lane = static_cast<int>(v.movement);
      t_min = std::max(t_min, lane_floor[lane]);
      lane_floor[lane] = t_min;
      v.t_min = t_min;
      v.t_assign = av.t_assign;
      // free vehicles keep entry (id) order, so to_solve[j] mirrors free_index[j]
      snap.to_solve.vehicles.push_back(v);
    }

    if (opts.replan_observer) opts.replan_observer(snap);

    ReplanRecord rec;
    rec.sim_time = now;
    rec.n_vehicles = static_cast<int>(active.size());
    rec.strategy = strategy;

    const auto t_start = std::chrono::steady_clock::now();
    Schedule schedule;
    try {
      schedule = run_strategy(strategy, snap.to_solve, opts.order_budget);
    } catch (const BudgetError& e) {
      throw BudgetError(e.count(), e.budget(),
                        std::string(to_string(strategy)) + " replan at t=" +
                            std::to_string(now) + " s");
    }
    const auto t_end = std::chrono::steady_clock::now();
    rec.wallclock_ms = std::chrono::duration<double, std::milli>(t_end - t_start).count();
    rec.objective = schedule.objective;
    report.replans.push_back(rec);

    // Apply assignments and refresh motion plans.
    for (std::size_t j = 0; j < free_index.size(); ++j) {
      ActiveVehicle& av = active[free_index[j]];
      const Vehicle& v = snap.to_solve.vehicles[j];
      const double t_new = schedule.t_assign.at(av.state.id);
      if (std::abs(t_new - av.t_assign) <= 1e-12 && av.plan.t_arrive == av.t_assign) {
        av.state.t_min = v.t_min;
        continue;  // unchanged; keep the current plan
      }
      av.plan_x0 = v.position;
      av.plan_v0 = v.velocity;
      av.plan_t0 = now;
      av.plan = plan_motion(av.plan_x0, av.plan_v0, now, t_new, p);
      av.t_assign = t_new;
      av.state.t_assign = t_new;
      av.state.t_min = v.t_min;
    }
  }

  report.average_delay =
      report.vehicles_completed > 0
          ? delay_sum / static_cast<double>(report.vehicles_completed)
          : 0.0;
  if (!report.replans.empty()) {
    double ms = 0.0, n = 0.0;
    for (const ReplanRecord& r : report.replans) {
      ms += r.wallclock_ms;
      n += r.n_vehicles;
    }
    report.average_plan_time_ms = ms / static_cast<double>(report.replans.size());
    report.average_vehicle_count = n / static_cast<double>(report.replans.size());
  }
  return report;
}

}  // namespace mergecoord
