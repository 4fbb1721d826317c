#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mergecoord/strategies.hpp"

namespace mergecoord {

/// Displaced exponential headway law: arrivals at rate lambda with a hard
/// minimum headway tau, mean headway h_bar = 1/lambda.
struct HeadwayModel {
  double lambda = 0.0;  // veh/s
  double h_bar = 0.0;   // s
  double tau = 0.0;     // s

  /// Throws InfeasibleRateError unless h_bar > tau > 0.
  static HeadwayModel from_rate(double lambda, double tau);
};

/// P(h <= H): 0 for H <= tau, else 1 - exp(-(H - tau) / (h_bar - tau)).
double headway_cdf(const HeadwayModel& m, double H);

/// P(H1 <= h <= H2), both ends clamped at the support boundary.
double interval_probability(const HeadwayModel& m, double H1, double H2);

/// Closed-form probability of the four-vehicle special case (the region in
/// which fusing the two leading lane-1 vehicles hides the global optimum):
/// F1(dt1, delta) * F2(dt2-dt1, dt2-dt1+delta) * F1(dt1+dt2, 2*dt2+delta).
/// Requires delta >= dt1.
double special_case_probability(const Params& p, double delta, double lambda1,
                                double lambda2);

struct SpecialCaseEstimate {
  double p_region = 0.0;         // fraction of samples inside the region
  double p_acbd_optimal = 0.0;   // fraction where grouping misses the strict optimum
  double se_region = 0.0;        // binomial standard errors
  double se_acbd = 0.0;
  std::uint64_t trials = 0;
};

/// Monte-Carlo oracle for special_case_probability. Per trial the three
/// constrained offsets (lane-1 headway h_AB, lane-2 offset of C, lane-1
/// offset of D) are drawn independently from their displaced exponential
/// laws, matching the closed form's independence structure. p_acbd_optimal
/// counts trials where A and B would be grouped (h_AB < delta) and ACBD has
/// strictly minimal total passing time among ABDC/ABCD/ACBD/CABD, which is
/// contained in the region event. Deterministic given seed.
SpecialCaseEstimate mc_special_case(const Params& p, double delta, double lambda1,
                                    double lambda2, std::uint64_t trials,
                                    std::uint64_t seed);

struct AlignmentReport {
  std::uint64_t total_orders = 0;
  std::uint64_t rank = 0;      // 1-based; ties share the best rank
  double top_fraction = 0.0;   // rank / total_orders
  std::vector<std::pair<std::uint64_t, bool>> curve;  // (g, rank <= g), k' = 1
};

/// Rank of J_candidate among the objectives of every order (1 + count of
/// strictly smaller values). Throws BudgetError past `budget` orders.
AlignmentReport rank_of(const Scenario& s, double j_candidate,
                        std::uint64_t budget = kDefaultOrderBudget);

struct SolutionHistogram {
  std::vector<double> bin_lower;      // lower edge per bin
  std::vector<std::uint64_t> counts;  // parallel to bin_lower
  double bin_width = 0.0;
  double j_min = 0.0;
  double j_max = 0.0;
  std::uint64_t total_orders = 0;
  double grouping_objective = 0.0;
  std::uint64_t grouping_rank = 0;
  double fifo_objective = 0.0;
  std::uint64_t fifo_rank = 0;
};

/// Equal-width histogram of every order's objective over [min J, max J],
/// annotated with the grouping and FIFO solutions and their ranks.
SolutionHistogram histogram_of_solutions(const Scenario& s, int bins,
                                         std::uint64_t budget = kDefaultOrderBudget);

}  // namespace mergecoord
