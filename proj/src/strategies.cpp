#include "mergecoord/strategies.hpp"

#include <algorithm>
#include <limits>

namespace mergecoord {

Schedule solve_fifo(const Scenario& s) {
  std::vector<const Vehicle*> order(s.vehicles.size());
  std::transform(s.vehicles.begin(), s.vehicles.end(), order.begin(),
                 [](const Vehicle& v) { return &v; });
  std::sort(order.begin(), order.end(), [](const Vehicle* a, const Vehicle* b) {
    if (a->t_min != b->t_min) return a->t_min < b->t_min;
    return a->id < b->id;
  });
  PassingOrder po;
  po.sequence.reserve(order.size());
  for (const Vehicle* v : order) po.sequence.push_back(v->id);
  return schedule_order(s, po);
}

namespace {

// DFS over the interleaving tree with the schedule recurrence maintained
// incrementally. The bound w1*max_t + w2*delay_sum is admissible: both terms
// are non-decreasing along any completion.
class PlanningSearch {
 public:
  PlanningSearch(const Scenario& s, bool prune)
      : lanes_(detail::lane_times(s)), p_(s.params), prune_(prune) {
    path_.reserve(lanes_.main.size() + lanes_.ramp.size());
    if (prune_) hint_ = solve_fifo(s).objective;
  }

  void run() { walk(0, 0, -1, 0.0, 0.0, 0.0); }

  bool found() const { return found_; }
  double best_objective() const { return best_j_; }
  const std::vector<int>& best_sequence() const { return best_; }

 private:
  void walk(std::size_t i1, std::size_t i2, int last_movement, double last_t,
            double max_t, double delay_sum) {
    if (i1 == lanes_.main.size() && i2 == lanes_.ramp.size()) {
      const double j = p_.w1 * max_t + p_.w2 * delay_sum;
      if (!found_ ? j <= hint_ : j < best_j_) {
        found_ = true;
        best_j_ = j;
        best_ = path_;
      }
      return;
    }
    if (prune_) {
      const double bound = p_.w1 * max_t + p_.w2 * delay_sum;
      if (found_ ? bound >= best_j_ : bound > hint_) return;
    }
    if (i1 < lanes_.main.size())
      step(lanes_.main[i1], lanes_.main_ids[i1], 0, i1 + 1, i2, last_movement,
           last_t, max_t, delay_sum);
    if (i2 < lanes_.ramp.size())
      step(lanes_.ramp[i2], lanes_.ramp_ids[i2], 1, i1, i2 + 1, last_movement,
           last_t, max_t, delay_sum);
  }

  void step(double t_min, int id, int movement, std::size_t i1, std::size_t i2,
            int last_movement, double last_t, double max_t, double delay_sum) {
    double t = t_min;
    if (last_movement >= 0) {
      const double gap = (movement == last_movement) ? p_.dt1 : p_.dt2;
      t = std::max(last_t + gap, t_min);
    }
    path_.push_back(id);
    walk(i1, i2, movement, t, std::max(max_t, t), delay_sum + (t - t_min));
    path_.pop_back();
  }

  detail::LaneTimes lanes_;
  const Params& p_;
  bool prune_;
  // The FIFO objective is an upper bound on the optimum (its order is in the
  // search space), so partial orders already above it can never win; using it
  // before the first incumbent keeps the first-in-enumeration tie-break exact.
  double hint_ = std::numeric_limits<double>::infinity();
  bool found_ = false;
  double best_j_ = std::numeric_limits<double>::infinity();
  std::vector<int> best_;
  std::vector<int> path_;
};

}  // namespace

Schedule solve_planning(const Scenario& s, bool prune, std::uint64_t budget) {
  const std::uint64_t count =
      interleaving_count(s.count(Movement::kMain), s.count(Movement::kRamp));
  if (count > budget) throw BudgetError(count, budget, "solve_planning");

  PlanningSearch search(s, prune);
  search.run();
  PassingOrder best;
  best.sequence = search.best_sequence();
  return schedule_order(s, best);
}

std::size_t GroupPartition::count(Movement m) const {
  return static_cast<std::size_t>(
      std::count_if(groups.begin(), groups.end(),
                    [m](const VehicleGroup& g) { return g.movement == m; }));
}

namespace {

std::vector<VehicleGroup> group_at(const Scenario& s, double threshold) {
  std::vector<VehicleGroup> groups;
  for (Movement m : {Movement::kMain, Movement::kRamp}) {
    const Vehicle* prev = nullptr;
    for (const Vehicle* v : s.on(m)) {
      if (prev && time_headway(*prev, *v) < threshold) {
        groups.back().ids.push_back(v->id);
      } else {
        groups.push_back({m, {v->id}});
      }
      prev = v;
    }
  }
  std::sort(groups.begin(), groups.end(),
            [](const VehicleGroup& a, const VehicleGroup& b) {
              return a.ids.front() < b.ids.front();
            });
  return groups;
}

}  // namespace

GroupPartition form_groups(const Scenario& s) {
  GroupPartition out;
  out.threshold_used = s.params.threshold_init;
  out.groups = group_at(s, out.threshold_used);
  // Group count is non-increasing in the threshold and bounded below by the
  // number of non-empty movements, so this terminates.
  while (out.groups.size() > static_cast<std::size_t>(s.params.max_groups)) {
    out.threshold_used += s.params.threshold_step;
    ++out.iterations;
    out.groups = group_at(s, out.threshold_used);
  }
  return out;
}

GroupingSearch solve_grouping_search(const Scenario& s) {
  GroupingSearch out;
  out.partition = form_groups(s);

  std::vector<const VehicleGroup*> main_groups;
  std::vector<const VehicleGroup*> ramp_groups;
  for (const VehicleGroup& g : out.partition.groups)
    (g.movement == Movement::kMain ? main_groups : ramp_groups).push_back(&g);

  PassingOrder expanded;
  expanded.sequence.reserve(s.vehicles.size());
  bool found = false;
  Schedule best;

  // Interleave the two group sequences (group lane order fixed), expanding
  // each group order into the concatenation of its members.
  const std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t g1,
                                                                 std::size_t g2) {
    if (g1 == main_groups.size() && g2 == ramp_groups.size()) {
      Schedule candidate = schedule_order(s, expanded);
      ++out.orders_evaluated;
      if (!found || candidate.objective < best.objective) {
        found = true;
        best = std::move(candidate);
      }
      return;
    }
    if (g1 < main_groups.size()) {
      const auto& ids = main_groups[g1]->ids;
      expanded.sequence.insert(expanded.sequence.end(), ids.begin(), ids.end());
      walk(g1 + 1, g2);
      expanded.sequence.resize(expanded.sequence.size() - ids.size());
    }
    if (g2 < ramp_groups.size()) {
      const auto& ids = ramp_groups[g2]->ids;
      expanded.sequence.insert(expanded.sequence.end(), ids.begin(), ids.end());
      walk(g1, g2 + 1);
      expanded.sequence.resize(expanded.sequence.size() - ids.size());
    }
  };
  walk(0, 0);

  out.schedule = std::move(best);
  return out;
}

Schedule solve_grouping(const Scenario& s) { return solve_grouping_search(s).schedule; }

}  // namespace mergecoord
