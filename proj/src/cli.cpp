#include "mergecoord/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "mergecoord/analysis.hpp"
#include "mergecoord/rng.hpp"

namespace mergecoord::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

int thread_cap_from_env() {
  const char* raw = std::getenv("MERGECOORD_THREADS");
  if (!raw || !*raw) return 0;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 0)
    throw ConfigError(std::string("MERGECOORD_THREADS must be a nonnegative integer, got '") +
                      raw + "'");
  return static_cast<int>(v);
}

namespace {

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ordered_json params_json(const Params& p) {
  ordered_json j;
  j["dt1"] = p.dt1;
  j["dt2"] = p.dt2;
  j["a_min"] = p.a_min;
  j["a_max"] = p.a_max;
  j["v_min"] = p.v_min;
  j["v_max"] = p.v_max;
  j["w1"] = p.w1;
  j["w2"] = p.w2;
  j["L"] = p.control_zone_length;
  j["T"] = p.replan_period;
  j["max_groups"] = p.max_groups;
  j["threshold_init"] = p.threshold_init;
  j["threshold_step"] = p.threshold_step;
  return j;
}

void write_manifest(const std::string& out_dir, const std::string& command,
                    std::uint64_t seed, const Params& p, const ordered_json& flags) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  j["timestamp"] = utc_timestamp();
  j["seed"] = seed;
  j["out_dir"] = out_dir;
  j["threads"] = thread_cap_from_env();
  j["params"] = params_json(p);
  j["flags"] = flags;
  std::ofstream f(fs::path(out_dir) / "manifest.json", std::ios::binary);
  f << j.dump(2) << '\n';
}

/// Loads the config (or defaults), printing violations and returning false
/// when the resulting Params are invalid.
bool resolve_params(const std::optional<std::string>& config_path, Params& p,
                    std::ostream& err) {
  if (config_path) p = load_params(*config_path);
  const std::vector<std::string> bad = validate_config(p);
  if (!bad.empty()) {
    for (const std::string& b : bad) err << "config violation: " << b << '\n';
    return false;
  }
  return true;
}

bool prepare_out_dir(const std::string& out_dir, std::ostream& err) {
  if (out_dir.empty()) {
    err << "an output directory is required (--out)\n";
    return false;
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    err << "cannot create output directory '" << out_dir << "': " << ec.message() << '\n';
    return false;
  }
  return true;
}

std::ofstream open_csv(const std::string& out_dir, const std::string& name) {
  return std::ofstream(fs::path(out_dir) / name, std::ios::binary);
}

}  // namespace

int run_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  try {
    Params p;
    if (!resolve_params(args.config_path, p, err)) return kExitInvalidInput;
    const std::optional<Strategy> strategy = strategy_from_name(args.strategy);
    if (!strategy) {
      err << "unknown strategy '" << args.strategy << "' (planning|fifo|grouping)\n";
      return kExitInvalidInput;
    }
    if (!prepare_out_dir(args.out_dir, err)) return kExitInvalidInput;

    const MetricsReport report =
        simulate(args.lambda1, args.lambda2, args.duration, *strategy, p, args.seed);

    {
      std::ofstream csv = open_csv(args.out_dir, "replans.csv");
      csv << "sim_time_s,n_vehicles,strategy,J,plan_wallclock_ms\n";
      for (const ReplanRecord& r : report.replans)
        csv << fixed6(r.sim_time) << ',' << r.n_vehicles << ',' << to_string(r.strategy)
            << ',' << fixed6(r.objective) << ',' << fixed6(r.wallclock_ms) << '\n';
    }
    {
      std::ofstream summary = open_csv(args.out_dir, "summary.txt");
      summary << "average_delay = " << fixed6(report.average_delay) << '\n'
              << "average_vehicle_count = " << fixed6(report.average_vehicle_count) << '\n'
              << "vehicles_entered = " << report.vehicles_entered << '\n'
              << "vehicles_completed = " << report.vehicles_completed << '\n'
              << "frozen_holds = " << report.frozen_holds << '\n'
              << "average_plan_time_ms = " << fixed6(report.average_plan_time_ms) << '\n';
    }
    ordered_json flags;
    flags["config"] = args.config_path ? ordered_json(*args.config_path) : ordered_json(nullptr);
    flags["lambda1"] = args.lambda1;
    flags["lambda2"] = args.lambda2;
    flags["duration"] = args.duration;
    flags["strategy"] = args.strategy;
    write_manifest(args.out_dir, "simulate", args.seed, p, flags);

    out << "simulate: " << report.vehicles_completed << " vehicles completed, average delay "
        << fixed6(report.average_delay) << " s/veh\n";
    return kExitOk;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudgetExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

int run_alignment(const AlignmentArgs& args, std::ostream& out, std::ostream& err) {
  try {
    Params p;
    if (!resolve_params(args.config_path, p, err)) return kExitInvalidInput;
    if (args.scenarios < 1 || args.max_vehicles < 1 || !(args.horizon > 0.0)) {
      err << "alignment requires scenarios >= 1, max-vehicles >= 1, horizon > 0\n";
      return kExitInvalidInput;
    }
    if (!prepare_out_dir(args.out_dir, err)) return kExitInvalidInput;

    std::ofstream csv = open_csv(args.out_dir, "scenarios.csv");
    csv << "scenario,n_vehicles,n1,n2,total_orders,grouping_J,grouping_rank,top_fraction,status\n";

    std::vector<std::uint64_t> ranks;
    for (int k = 0; k < args.scenarios; ++k) {
      const ArrivalStream stream = generate_arrivals(
          args.lambda, args.lambda, args.horizon, p, derive_seed(args.seed, 1000 + k));
      const Scenario s = scenario_from_arrivals(stream, p,
                                                static_cast<std::size_t>(args.max_vehicles));
      const std::size_t n1 = s.count(Movement::kMain);
      const std::size_t n2 = s.count(Movement::kRamp);
      if (s.vehicles.empty()) {
        csv << k << ",0,0,0,1,,,," << "empty\n";
        continue;
      }
      try {
        const Schedule grouping = solve_grouping(s);
        const AlignmentReport report = rank_of(s, grouping.objective);
        ranks.push_back(report.rank);
        csv << k << ',' << s.vehicles.size() << ',' << n1 << ',' << n2 << ','
            << report.total_orders << ',' << fixed6(grouping.objective) << ','
            << report.rank << ',' << fixed6(report.top_fraction) << ",ok\n";
      } catch (const BudgetError& e) {
        if (!args.skip_over_budget) {
          err << "budget exceeded: " << e.what() << '\n';
          return kExitBudgetExceeded;
        }
        csv << k << ',' << s.vehicles.size() << ',' << n1 << ',' << n2 << ','
            << e.count() << ",,,," << "skipped\n";
      }
    }

    // Alignment-probability curve at alignment level 1: P(rank <= g), emitted
    // at its breakpoints (the observed ranks).
    {
      std::ofstream curve = open_csv(args.out_dir, "alignment_curve.csv");
      curve << "g,alignment_probability\n";
      if (!ranks.empty()) {
        std::vector<std::uint64_t> sorted = ranks;
        std::sort(sorted.begin(), sorted.end());
        const double total = static_cast<double>(sorted.size());
        if (sorted.front() != 1) curve << "1," << fixed6(0.0) << '\n';
        std::uint64_t last_g = 0;
        for (const std::uint64_t g : sorted) {
          if (g == last_g) continue;
          last_g = g;
          const auto covered =
              std::upper_bound(sorted.begin(), sorted.end(), g) - sorted.begin();
          curve << g << ',' << fixed6(static_cast<double>(covered) / total) << '\n';
        }
      }
    }

    ordered_json flags;
    flags["config"] = args.config_path ? ordered_json(*args.config_path) : ordered_json(nullptr);
    flags["lambda"] = args.lambda;
    flags["scenarios"] = args.scenarios;
    flags["horizon"] = args.horizon;
    flags["max_vehicles"] = args.max_vehicles;
    flags["skip_over_budget"] = args.skip_over_budget;
    write_manifest(args.out_dir, "alignment", args.seed, p, flags);

    out << "alignment: ranked " << ranks.size() << " of " << args.scenarios << " scenarios\n";
    return kExitOk;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudgetExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

int run_histogram(const HistogramArgs& args, std::ostream& out, std::ostream& err) {
  try {
    Params p;
    if (!resolve_params(args.config_path, p, err)) return kExitInvalidInput;
    if (args.n1 < 0 || args.n2 < 0 || args.n1 + args.n2 < 1 || args.bins < 1) {
      err << "histogram requires n1, n2 >= 0 with n1 + n2 >= 1 and bins >= 1\n";
      return kExitInvalidInput;
    }
    if (!prepare_out_dir(args.out_dir, err)) return kExitInvalidInput;

    const ArrivalStream stream = generate_fixed_counts(
        args.lambda, args.lambda, static_cast<std::size_t>(args.n1),
        static_cast<std::size_t>(args.n2), p, args.seed);
    const Scenario s = scenario_from_arrivals(stream, p);
    const SolutionHistogram h = histogram_of_solutions(s, args.bins);

    {
      std::ofstream csv = open_csv(args.out_dir, "histogram.csv");
      csv << "bin_lower,count\n";
      for (std::size_t i = 0; i < h.counts.size(); ++i)
        csv << fixed6(h.bin_lower[i]) << ',' << h.counts[i] << '\n';
    }
    {
      std::ofstream marks = open_csv(args.out_dir, "solution_marks.csv");
      marks << "method,J,rank,total_orders\n";
      marks << "grouping," << fixed6(h.grouping_objective) << ',' << h.grouping_rank << ','
            << h.total_orders << '\n';
      marks << "fifo," << fixed6(h.fifo_objective) << ',' << h.fifo_rank << ','
            << h.total_orders << '\n';
    }

    ordered_json flags;
    flags["config"] = args.config_path ? ordered_json(*args.config_path) : ordered_json(nullptr);
    flags["n1"] = args.n1;
    flags["n2"] = args.n2;
    flags["lambda"] = args.lambda;
    flags["bins"] = args.bins;
    write_manifest(args.out_dir, "histogram", args.seed, p, flags);

    out << "histogram: " << h.total_orders << " orders over " << h.counts.size()
        << " bins; grouping rank " << h.grouping_rank << ", fifo rank " << h.fifo_rank << '\n';
    return kExitOk;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudgetExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

int run_probability(const ProbabilityArgs& args, std::ostream& out, std::ostream& err) {
  try {
    Params p;
    p.dt1 = args.dt1;
    p.dt2 = args.dt2;
    if (!(p.dt1 > 0.0) || !(p.dt2 > p.dt1)) {
      err << "requires dt2 > dt1 > 0\n";
      return kExitInvalidInput;
    }
    if (args.delta < args.dt1) {
      err << "delta must be at least dt1 (delta=" << args.delta << ", dt1=" << args.dt1
          << ")\n";
      return kExitInvalidInput;
    }

    std::string text;
    text += "closed_form = " + fixed6(special_case_probability(p, args.delta, args.lambda1,
                                                               args.lambda2)) + '\n';
    if (args.mc_trials) {
      const SpecialCaseEstimate est = mc_special_case(p, args.delta, args.lambda1,
                                                      args.lambda2, *args.mc_trials, args.seed);
      text += "mc_trials = " + std::to_string(est.trials) + '\n';
      text += "p_region = " + fixed6(est.p_region) + '\n';
      text += "p_region_se = " + fixed6(est.se_region) + '\n';
      text += "p_acbd_optimal = " + fixed6(est.p_acbd_optimal) + '\n';
      text += "p_acbd_optimal_se = " + fixed6(est.se_acbd) + '\n';
    }
    out << text;

    if (args.out_dir) {
      if (!prepare_out_dir(*args.out_dir, err)) return kExitInvalidInput;
      std::ofstream f(fs::path(*args.out_dir) / "probability.txt", std::ios::binary);
      f << text;
      ordered_json flags;
      flags["dt1"] = args.dt1;
      flags["dt2"] = args.dt2;
      flags["delta"] = args.delta;
      flags["lambda1"] = args.lambda1;
      flags["lambda2"] = args.lambda2;
      flags["mc_trials"] =
          args.mc_trials ? ordered_json(*args.mc_trials) : ordered_json(nullptr);
      write_manifest(*args.out_dir, "probability", args.seed, p, flags);
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

}  // namespace mergecoord::cli
