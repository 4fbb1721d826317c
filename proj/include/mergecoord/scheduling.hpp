#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "mergecoord/model.hpp"

namespace mergecoord {

/// A total order of vehicle ids through the merging zone. Valid orders keep
/// each movement's vehicles in lane order, which makes the pairwise
/// precedence choice between conflicting movements implicit in the sequence.
struct PassingOrder {
  std::vector<int> sequence;
};

struct Schedule {
  PassingOrder order;
  std::map<int, double> t_assign;  // vehicle id -> assigned access time, s
  std::map<int, double> delays;    // vehicle id -> t_assign - t_min, s
  double objective = 0.0;          // w1 * max(t_assign) + w2 * sum(delays)
};

/// Fixed-order schedule: walks the order once with one cursor per lane,
/// assigning each vehicle the larger of its own t_min and its predecessor's
/// time plus the safety gap (dt1 within a movement, dt2 across movements).
/// Each assignment is the smallest feasible one, so the schedule is optimal
/// for the given order; the walk is linear in the vehicle count. Throws
/// InvalidOrderError when the order does not cover the scenario's vehicles
/// exactly once in lane order.
Schedule schedule_order(const Scenario& s, const PassingOrder& order);

/// Number of lane-order-preserving orders: C(n1+n2, n1), exact.
/// Throws OverflowError when the result exceeds 64 bits.
std::uint64_t interleaving_count(std::uint64_t n1, std::uint64_t n2);

/// Visits every lane-order-preserving order exactly once, in lexicographic
/// order of the movement-choice string (Main first). The visitor returns
/// false to stop early.
void enumerate_interleavings(const Scenario& s,
                             const std::function<bool(const PassingOrder&)>& visit);

std::vector<PassingOrder> all_interleavings(const Scenario& s);

namespace detail {

/// Per-movement t_min sequences in lane order, the common input of the
/// interleaving walkers below.
struct LaneTimes {
  std::vector<double> main;
  std::vector<double> ramp;
  std::vector<int> main_ids;
  std::vector<int> ramp_ids;
};

LaneTimes lane_times(const Scenario& s);

}  // namespace detail

/// Evaluates the objective of every lane-order-preserving order without
/// materializing the orders, maintaining the schedule recurrence
/// incrementally along the enumeration tree. on_leaf receives each J in
/// enumeration order.
template <typename F>
void for_each_objective(const Scenario& s, F&& on_leaf) {
  const detail::LaneTimes lanes = detail::lane_times(s);
  const Params& p = s.params;
  const std::size_t n1 = lanes.main.size();
  const std::size_t n2 = lanes.ramp.size();
  if (n1 + n2 == 0) {
    on_leaf(0.0);
    return;
  }

  struct Walker {
    const detail::LaneTimes& lanes;
    const Params& p;
    F& visit;

    void walk(std::size_t i1, std::size_t i2, int last_movement, double last_t,
              double max_t, double delay_sum) {
      if (i1 == lanes.main.size() && i2 == lanes.ramp.size()) {
        visit(p.w1 * max_t + p.w2 * delay_sum);
        return;
      }
      if (i1 < lanes.main.size()) {
        step(lanes.main[i1], 0, i1 + 1, i2, last_movement, last_t, max_t, delay_sum);
      }
      if (i2 < lanes.ramp.size()) {
        step(lanes.ramp[i2], 1, i1, i2 + 1, last_movement, last_t, max_t, delay_sum);
      }
    }

    void step(double t_min, int movement, std::size_t i1, std::size_t i2,
              int last_movement, double last_t, double max_t, double delay_sum) {
      double t = t_min;
      if (last_movement >= 0) {
        const double gap = (movement == last_movement) ? p.dt1 : p.dt2;
        t = std::max(last_t + gap, t_min);
      }
      walk(i1, i2, movement, t, std::max(max_t, t), delay_sum + (t - t_min));
    }
  };

  Walker{lanes, p, on_leaf}.walk(0, 0, -1, 0.0, 0.0, 0.0);
}

}  // namespace mergecoord
