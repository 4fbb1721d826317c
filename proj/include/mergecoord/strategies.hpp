#pragma once

#include <cstdint>

#include "mergecoord/scheduling.hpp"

namespace mergecoord {

inline constexpr std::uint64_t kDefaultOrderBudget = 10'000'000;

/// First-in-first-out: vehicles sorted by minimum access time (ties by id),
/// then scheduled with the fixed-order recurrence.
Schedule solve_fifo(const Scenario& s);

/// Global optimum over every lane-order-preserving order. With prune on, a
/// branch-and-bound cut discards partial orders whose lower bound (current
/// weighted makespan plus accumulated weighted delay) cannot beat the
/// incumbent; the returned J and order are identical either way (first order
/// in enumeration order wins ties). Throws BudgetError when the solution
/// space exceeds `budget` orders.
Schedule solve_planning(const Scenario& s, bool prune = true,
                        std::uint64_t budget = kDefaultOrderBudget);

struct VehicleGroup {
  Movement movement = Movement::kMain;
  std::vector<int> ids;  // lane order
};

struct GroupPartition {
  std::vector<VehicleGroup> groups;  // ordered by first vehicle id
  double threshold_used = 0.0;       // s
  int iterations = 0;                // threshold increments performed

  std::size_t count(Movement m) const;
};

/// Fuses consecutive same-movement vehicles whose headway is below the
/// threshold, growing the threshold by threshold_step until at most
/// max_groups groups remain.
GroupPartition form_groups(const Scenario& s);

struct GroupingSearch {
  Schedule schedule;
  GroupPartition partition;
  std::uint64_t orders_evaluated = 0;
};

/// Groups the scenario, searches every group-level interleaving (expanding
/// each to a full vehicle order), and keeps the best schedule.
GroupingSearch solve_grouping_search(const Scenario& s);

Schedule solve_grouping(const Scenario& s);

}  // namespace mergecoord
