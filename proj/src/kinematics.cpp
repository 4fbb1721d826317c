#include "mergecoord/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mergecoord {

namespace {

constexpr double kTimeTol = 1e-9;  // case-boundary and arrival tolerance, s
constexpr double kVelTol = 1e-9;   // velocity-bound tolerance, m/s
constexpr double kDistTol = 1e-7;  // "already there" threshold, m

// Below this cruise velocity a decelerate-then-cruise profile degenerates into
// an hours-long crawl; the stop-and-go fallback is the sane profile instead.
constexpr double kCruiseFloor = 1e-2;  // m/s

void check_state(double x0, double v0, const Params& p) {
  if (x0 < 0.0)
    throw ContractViolation("x0 must be nonnegative, got " + std::to_string(x0));
  if (v0 < p.v_min - kVelTol || v0 > p.v_max + kVelTol)
    throw ContractViolation("v0=" + std::to_string(v0) + " outside [v_min, v_max]");
}

MotionPlan two_phase(double a, double t1, double total, double v_cru, double t_arrive) {
  MotionPlan plan;
  plan.t_arrive = t_arrive;
  plan.v_cru = v_cru;
  if (t1 > 0.0) plan.phases.push_back({a, t1});
  if (total - t1 > 0.0) plan.phases.push_back({0.0, total - t1});
  return plan;
}

}  // namespace

double min_access_time(double x0, double v0, double t0, const Params& p) {
  check_state(x0, v0, p);
  v0 = std::clamp(v0, p.v_min, p.v_max);
  // Full acceleration until the speed limit or the merging zone, then cruise.
  double v_reach = std::sqrt(v0 * v0 + 2.0 * p.a_max * x0);
  double t1 = std::min((p.v_max - v0) / p.a_max, (v_reach - v0) / p.a_max);
  double t2 = std::max(
      (2.0 * p.a_max * x0 - p.v_max * p.v_max + v0 * v0) / (2.0 * p.a_max * p.v_max), 0.0);
  return t0 + t1 + t2;
}

MotionPlan plan_motion(double x0, double v0, double now, double t_assign,
                       const Params& p, bool allow_stop_and_go) {
  check_state(x0, v0, p);
  v0 = std::clamp(v0, p.v_min, p.v_max);

  const double t_min = min_access_time(x0, v0, now, p);
  if (t_assign < t_min - kTimeTol)
    throw InfeasibleTimeError("t_assign=" + std::to_string(t_assign) +
                              " precedes minimum access time " + std::to_string(t_min));
  const double total = std::max(t_assign - now, 0.0);

  // Already at the merging-zone entry.
  if (x0 <= kDistTol) {
    if (total <= kTimeTol || v0 <= kVelTol) {
      MotionPlan plan;
      plan.t_arrive = t_assign;
      plan.v_cru = v0;
      if (total > kTimeTol) plan.phases.push_back({0.0, total});
      return plan;
    }
    throw NoProfileError("moving vehicle already at the merging zone cannot arrive later");
  }

  const double coast_time = v0 > 0.0 ? x0 / v0 : 0.0;

  // Constant velocity.
  if (v0 > 0.0 && std::abs(total - coast_time) <= kTimeTol) {
    MotionPlan plan = two_phase(0.0, 0.0, total, v0, t_assign);
    return plan;
  }

  if (v0 <= 0.0 || total < coast_time) {
    // Arrive earlier than coasting: accelerate at a_max, then cruise. The
    // phase split solves v0*t1 + a*t1^2/2 + (v0 + a*t1)*(total - t1) = x0;
    // of the two roots only total - sqrt(disc)/|a| can lie in [0, total].
    const double a = p.a_max;
    const double disc = (a * total) * (a * total) + 2.0 * a * (v0 * total - x0);
    if (disc >= 0.0) {
      double t1 = total - std::sqrt(disc) / a;
      double v_cru = v0 + a * t1;
      if (t1 >= -kTimeTol && t1 <= total + kTimeTol && v_cru <= p.v_max + kVelTol) {
        t1 = std::clamp(t1, 0.0, total);
        v_cru = std::min(v0 + a * t1, p.v_max);
        return two_phase(a, t1, total, v_cru, t_assign);
      }
    }
    // Accelerate the whole way (boundary of the previous case).
    const double a_full = 2.0 * (x0 - v0 * total) / (total * total);
    const double v_end = v0 + a_full * total;
    if (a_full <= p.a_max * (1.0 + 1e-12) + kVelTol && v_end <= p.v_max + kVelTol) {
      MotionPlan plan;
      plan.t_arrive = t_assign;
      plan.v_cru = std::min(v_end, p.v_max);
      plan.phases.push_back({a_full, total});
      return plan;
    }
    throw NoProfileError("no acceleration profile reaches the merging zone at t_assign");
  }

  // Arrive later than coasting: decelerate at a_min, then cruise.
  const double a = p.a_min;
  const double disc = (a * total) * (a * total) + 2.0 * a * (v0 * total - x0);
  double cruise_v = -1.0;
  double cruise_t1 = 0.0;
  if (disc >= 0.0) {
    double t1 = total - std::sqrt(disc) / (-a);
    double v_cru = v0 + a * t1;
    if (t1 >= -kTimeTol && t1 <= total + kTimeTol && v_cru >= p.v_min - kVelTol) {
      cruise_t1 = std::clamp(t1, 0.0, total);
      cruise_v = std::max(v0 + a * cruise_t1, p.v_min);
      if (cruise_v >= kCruiseFloor)
        return two_phase(a, cruise_t1, total, cruise_v, t_assign);
      // else: a near-standstill crawl; prefer the stop-and-go fallback.
    }
  }
  // Decelerate the whole way (boundary case, x0 below braking distance).
  const double a_full = 2.0 * (x0 - v0 * total) / (total * total);
  const double v_end = v0 + a_full * total;
  if (a_full >= p.a_min * (1.0 + 1e-12) - kVelTol && v_end >= p.v_min - kVelTol) {
    MotionPlan plan;
    plan.t_arrive = t_assign;
    plan.v_cru = std::max(v_end, p.v_min);
    plan.phases.push_back({a_full, total});
    return plan;
  }
  // Stop-and-go: brake to rest, hold, then run the minimum-time profile.
  if (allow_stop_and_go && p.v_min <= 0.0) {
    const double brake = -p.a_min;
    const double t_stop = v0 / brake;
    const double d_stop = 0.5 * v0 * v0 / brake;
    if (d_stop <= x0 + kDistTol) {
      const double rem = std::max(x0 - d_stop, 0.0);
      const double v_top = std::min(std::sqrt(2.0 * p.a_max * rem), p.v_max);
      const double t_acc = v_top / p.a_max;
      const double d_acc = 0.5 * v_top * v_top / p.a_max;
      const double t_cruise = v_top > 0.0 ? std::max(rem - d_acc, 0.0) / v_top : 0.0;
      const double t_hold = total - t_stop - t_acc - t_cruise;
      if (t_hold >= -kTimeTol) {
        MotionPlan plan;
        plan.t_arrive = t_assign;
        plan.v_cru = v_top;
        plan.stop_and_go = true;
        if (t_stop > 0.0) plan.phases.push_back({p.a_min, t_stop});
        if (t_hold > 0.0) plan.phases.push_back({0.0, std::max(t_hold, 0.0)});
        if (t_acc > 0.0) plan.phases.push_back({p.a_max, t_acc});
        if (t_cruise > 0.0) plan.phases.push_back({0.0, t_cruise});
        return plan;
      }
    }
  }
  // Crawl profile rejected above only on speed grounds; use it before giving up.
  if (cruise_v >= p.v_min - kVelTol && cruise_v >= 0.0)
    return two_phase(a, cruise_t1, total, cruise_v, t_assign);
  throw NoProfileError("no deceleration profile reaches the merging zone at t_assign");
}

KinematicState sample_state(const MotionPlan& plan, double x0, double v0,
                            double now, double t) {
  if (t < now - kTimeTol || t > plan.t_arrive + kTimeTol)
    throw ContractViolation("sample time " + std::to_string(t) +
                            " outside [now, t_arrive]");
  double remaining = x0;
  double v = v0;
  double clock = now;
  for (const MotionPhase& phase : plan.phases) {
    const double step = std::min(phase.duration, t - clock);
    if (step <= 0.0) break;
    remaining -= v * step + 0.5 * phase.acceleration * step * step;
    v += phase.acceleration * step;
    clock += step;
  }
  if (t > clock) remaining -= v * (t - clock);
  return {std::max(remaining, 0.0), v};
}

}  // namespace mergecoord
