#pragma once

#include <vector>

#include "mergecoord/model.hpp"

namespace mergecoord {

struct MotionPhase {
  double acceleration = 0.0;  // m/s^2, constant over the phase
  double duration = 0.0;      // s, > 0
};

/// Piecewise-constant-acceleration profile covering the remaining distance
/// and arriving exactly at t_arrive.
struct MotionPlan {
  std::vector<MotionPhase> phases;
  double v_cru = 0.0;        // cruise/terminal velocity of the profile
  double t_arrive = 0.0;     // s, absolute
  bool stop_and_go = false;  // wait-in-place fallback profile was used
};

/// Earliest merging-zone arrival from (x0, v0) at time t0: full acceleration
/// to the speed limit, then cruise. x0 >= 0, v0 within [v_min, v_max].
double min_access_time(double x0, double v0, double t0, const Params& p);

/// Plans a profile from (x0, v0) at `now` arriving exactly at t_assign.
/// Case selection: constant speed when t_assign matches x0/v0; otherwise an
/// accelerate-then-cruise / pure-acceleration pair for earlier arrivals, or a
/// decelerate-then-cruise / pure-deceleration pair for later ones, accepting
/// a case only when its phase times and cruise velocity are physically valid.
/// Very late arrivals unreachable by those profiles fall back to a flagged
/// stop-and-go profile (brake to rest, hold, minimum-time go) when v_min = 0
/// and the fallback is allowed.
///
/// Throws InfeasibleTimeError when t_assign precedes the minimum access time
/// and NoProfileError when no profile can realize the request.
MotionPlan plan_motion(double x0, double v0, double now, double t_assign,
                       const Params& p, bool allow_stop_and_go = true);

struct KinematicState {
  double position = 0.0;  // m remaining, clamped at 0
  double velocity = 0.0;  // m/s
};

/// State at time t under `plan`, with (x0, v0) the state at `now`.
/// Requires now <= t <= plan.t_arrive (within tolerance).
KinematicState sample_state(const MotionPlan& plan, double x0, double v0,
                            double now, double t);

}  // namespace mergecoord
