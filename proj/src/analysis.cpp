#include "mergecoord/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mergecoord/rng.hpp"

namespace mergecoord {

HeadwayModel HeadwayModel::from_rate(double lambda, double tau) {
  if (!(lambda > 0.0))
    throw InfeasibleRateError("arrival rate must be positive, got " + std::to_string(lambda));
  if (!(tau > 0.0))
    throw InfeasibleRateError("minimum headway must be positive, got " + std::to_string(tau));
  HeadwayModel m{lambda, 1.0 / lambda, tau};
  if (!(m.h_bar > m.tau))
    throw InfeasibleRateError("rate " + std::to_string(lambda) +
                              " gives mean headway " + std::to_string(m.h_bar) +
                              " not above the minimum headway " + std::to_string(tau));
  return m;
}

double headway_cdf(const HeadwayModel& m, double H) {
  if (H <= m.tau) return 0.0;
  return 1.0 - std::exp(-(H - m.tau) / (m.h_bar - m.tau));
}

double interval_probability(const HeadwayModel& m, double H1, double H2) {
  if (H1 > H2) throw ContractViolation("interval_probability requires H1 <= H2");
  return headway_cdf(m, H2) - headway_cdf(m, H1);
}

double special_case_probability(const Params& p, double delta, double lambda1,
                                double lambda2) {
  if (delta < p.dt1)
    throw ContractViolation("delta must be at least dt1");
  const HeadwayModel lane1 = HeadwayModel::from_rate(lambda1, p.dt1);
  const HeadwayModel lane2 = HeadwayModel::from_rate(lambda2, p.dt1);
  const double f1 = interval_probability(lane1, p.dt1, delta);
  const double f2 = interval_probability(lane2, p.dt2 - p.dt1, p.dt2 - p.dt1 + delta);
  const double f3 = interval_probability(lane1, p.dt1 + p.dt2, 2.0 * p.dt2 + delta);
  return f1 * f2 * f3;
}

SpecialCaseEstimate mc_special_case(const Params& p, double delta, double lambda1,
                                    double lambda2, std::uint64_t trials,
                                    std::uint64_t seed) {
  if (trials < 1) throw ContractViolation("mc_special_case requires trials >= 1");
  if (delta < p.dt1) throw ContractViolation("delta must be at least dt1");
  const HeadwayModel lane1 = HeadwayModel::from_rate(lambda1, p.dt1);
  const HeadwayModel lane2 = HeadwayModel::from_rate(lambda2, p.dt1);

  // The four-vehicle scenario: A, B, D on the main lane, C on the ramp.
  Scenario four;
  four.params = p;
  four.vehicles = {
      {1, Movement::kMain, 0, 0, p.v_max, 0.0, {}},
      {2, Movement::kMain, 0, 0, p.v_max, 0.0, {}},
      {3, Movement::kRamp, 0, 0, p.v_max, 0.0, {}},
      {4, Movement::kMain, 0, 0, p.v_max, 0.0, {}},
  };
  const PassingOrder abdc{{1, 2, 4, 3}};
  const PassingOrder abcd{{1, 2, 3, 4}};
  const PassingOrder acbd{{1, 3, 2, 4}};
  const PassingOrder cabd{{3, 1, 2, 4}};

  const auto makespan = [&](const PassingOrder& order) {
    const Schedule sched = schedule_order(four, order);
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& [id, t] : sched.t_assign) m = std::max(m, t);
    return m;
  };

  std::mt19937_64 rng(derive_seed(seed, 0));
  std::uint64_t in_region = 0;
  std::uint64_t misses = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const double h_ab = sample_displaced_exponential(rng, lane1.h_bar, lane1.tau);
    const double c_off = sample_displaced_exponential(rng, lane2.h_bar, lane2.tau);
    const double d_off = sample_displaced_exponential(rng, lane1.h_bar, lane1.tau);

    const bool region = (p.dt1 <= h_ab && h_ab <= delta) &&
                        (p.dt2 - p.dt1 <= c_off && c_off <= p.dt2 - p.dt1 + delta) &&
                        (p.dt1 + p.dt2 <= d_off && d_off <= 2.0 * p.dt2 + delta);
    if (region) ++in_region;

    four.vehicles[0].t_min = 0.0;
    four.vehicles[1].t_min = h_ab;
    four.vehicles[2].t_min = c_off;
    four.vehicles[3].t_min = d_off;
    const double t_acbd = makespan(acbd);
    const bool strict_best = t_acbd < makespan(abdc) && t_acbd < makespan(abcd) &&
                             t_acbd < makespan(cabd);
    if (h_ab < delta && strict_best) ++misses;
  }

  SpecialCaseEstimate est;
  est.trials = trials;
  est.p_region = static_cast<double>(in_region) / static_cast<double>(trials);
  est.p_acbd_optimal = static_cast<double>(misses) / static_cast<double>(trials);
  est.se_region = std::sqrt(est.p_region * (1.0 - est.p_region) / static_cast<double>(trials));
  est.se_acbd =
      std::sqrt(est.p_acbd_optimal * (1.0 - est.p_acbd_optimal) / static_cast<double>(trials));
  return est;
}

AlignmentReport rank_of(const Scenario& s, double j_candidate, std::uint64_t budget) {
  const std::uint64_t count =
      interleaving_count(s.count(Movement::kMain), s.count(Movement::kRamp));
  if (count > budget) throw BudgetError(count, budget, "rank_of");

  std::uint64_t smaller = 0;
  std::uint64_t leaves = 0;
  for_each_objective(s, [&](double j) {
    ++leaves;
    if (j < j_candidate) ++smaller;
  });

  AlignmentReport report;
  report.total_orders = leaves;
  report.rank = smaller + 1;
  report.top_fraction = static_cast<double>(report.rank) / static_cast<double>(leaves);
  const std::uint64_t curve_end = std::min<std::uint64_t>(leaves, std::max<std::uint64_t>(report.rank, 32));
  for (std::uint64_t g = 1; g <= curve_end; ++g)
    report.curve.emplace_back(g, report.rank <= g);
  return report;
}

SolutionHistogram histogram_of_solutions(const Scenario& s, int bins, std::uint64_t budget) {
  if (bins < 1) throw ContractViolation("histogram needs at least one bin");
  const std::uint64_t count =
      interleaving_count(s.count(Movement::kMain), s.count(Movement::kRamp));
  if (count > budget) throw BudgetError(count, budget, "histogram_of_solutions");

  SolutionHistogram h;
  h.total_orders = count;
  h.grouping_objective = solve_grouping(s).objective;
  h.fifo_objective = solve_fifo(s).objective;

  double j_min = std::numeric_limits<double>::infinity();
  double j_max = -std::numeric_limits<double>::infinity();
  for_each_objective(s, [&](double j) {
    j_min = std::min(j_min, j);
    j_max = std::max(j_max, j);
  });
  h.j_min = j_min;
  h.j_max = j_max;

  const bool degenerate = !(j_max > j_min);
  const int n_bins = degenerate ? 1 : bins;
  h.bin_width = degenerate ? 0.0 : (j_max - j_min) / n_bins;
  h.counts.assign(n_bins, 0);
  for (int b = 0; b < n_bins; ++b) h.bin_lower.push_back(j_min + b * h.bin_width);

  std::uint64_t grouping_smaller = 0;
  std::uint64_t fifo_smaller = 0;
  for_each_objective(s, [&](double j) {
    int idx = 0;
    if (!degenerate)
      idx = std::min(static_cast<int>((j - j_min) / h.bin_width), n_bins - 1);
    ++h.counts[idx];
    if (j < h.grouping_objective) ++grouping_smaller;
    if (j < h.fifo_objective) ++fifo_smaller;
  });
  h.grouping_rank = grouping_smaller + 1;
  h.fifo_rank = fifo_smaller + 1;
  return h;
}

}  // namespace mergecoord
