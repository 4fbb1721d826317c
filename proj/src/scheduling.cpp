#include "mergecoord/scheduling.hpp"

#include <algorithm>
#include <limits>

namespace mergecoord {

namespace detail {

LaneTimes lane_times(const Scenario& s) {
  LaneTimes lanes;
  for (const Vehicle& v : s.vehicles) {
    if (v.movement == Movement::kMain) {
      lanes.main.push_back(v.t_min);
      lanes.main_ids.push_back(v.id);
    } else {
      lanes.ramp.push_back(v.t_min);
      lanes.ramp_ids.push_back(v.id);
    }
  }
  return lanes;
}

}  // namespace detail

Schedule schedule_order(const Scenario& s, const PassingOrder& order) {
  if (order.sequence.size() != s.vehicles.size())
    throw InvalidOrderError("order covers " + std::to_string(order.sequence.size()) +
                            " vehicles, scenario has " + std::to_string(s.vehicles.size()));
  const detail::LaneTimes lanes = detail::lane_times(s);

  Schedule out;
  out.order = order;
  const Params& p = s.params;

  // One cursor per lane: a valid order consumes each lane sequence in order,
  // so the walk doubles as the lane-order check.
  std::size_t i1 = 0, i2 = 0;
  double last_t = 0.0;
  double max_t = 0.0;
  double delay_sum = 0.0;
  int last_movement = -1;
  for (int id : order.sequence) {
    double t_min;
    int movement;
    if (i1 < lanes.main_ids.size() && lanes.main_ids[i1] == id) {
      t_min = lanes.main[i1];
      movement = 0;
      ++i1;
    } else if (i2 < lanes.ramp_ids.size() && lanes.ramp_ids[i2] == id) {
      t_min = lanes.ramp[i2];
      movement = 1;
      ++i2;
    } else {
      throw InvalidOrderError("order entry " + std::to_string(id) +
                              " duplicates a vehicle or breaks lane order");
    }
    double t = t_min;
    if (last_movement >= 0) {
      const double gap = (movement == last_movement) ? p.dt1 : p.dt2;
      t = std::max(last_t + gap, t_min);
    }
    out.t_assign[id] = t;
    out.delays[id] = t - t_min;
    delay_sum += t - t_min;
    max_t = std::max(max_t, t);
    last_t = t;
    last_movement = movement;
  }
  out.objective = p.w1 * max_t + p.w2 * delay_sum;
  return out;
}

std::uint64_t interleaving_count(std::uint64_t n1, std::uint64_t n2) {
  const std::uint64_t n = n1 + n2;
  if (n < n1) throw OverflowError("interleaving_count: n1 + n2 overflows");
  const std::uint64_t k = std::min(n1, n2);
  // C(n, k) built up multiplicatively; every intermediate is itself a
  // binomial coefficient, so the division is exact.
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
    if (r > std::numeric_limits<std::uint64_t>::max())
      throw OverflowError("interleaving_count(" + std::to_string(n1) + ", " +
                          std::to_string(n2) + ") exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

void enumerate_interleavings(const Scenario& s,
                             const std::function<bool(const PassingOrder&)>& visit) {
  const detail::LaneTimes lanes = detail::lane_times(s);
  const std::size_t n1 = lanes.main_ids.size();
  const std::size_t n2 = lanes.ramp_ids.size();

  PassingOrder order;
  order.sequence.reserve(n1 + n2);

  // Main-first recursion yields lexicographic order of the choice string.
  const std::function<bool(std::size_t, std::size_t)> walk =
      [&](std::size_t i1, std::size_t i2) -> bool {
    if (i1 == n1 && i2 == n2) return visit(order);
    if (i1 < n1) {
      order.sequence.push_back(lanes.main_ids[i1]);
      const bool keep = walk(i1 + 1, i2);
      order.sequence.pop_back();
      if (!keep) return false;
    }
    if (i2 < n2) {
      order.sequence.push_back(lanes.ramp_ids[i2]);
      const bool keep = walk(i1, i2 + 1);
      order.sequence.pop_back();
      if (!keep) return false;
    }
    return true;
  };
  walk(0, 0);
}

std::vector<PassingOrder> all_interleavings(const Scenario& s) {
  std::vector<PassingOrder> out;
  enumerate_interleavings(s, [&](const PassingOrder& order) {
    out.push_back(order);
    return true;
  });
  return out;
}

}  // namespace mergecoord
