#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "mergecoord/sim.hpp"

namespace mergecoord::cli {

inline constexpr const char* kToolName = "mergecoord";
inline constexpr const char* kToolVersion = "0.1.0";

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitBudgetExceeded = 3;

/// Thread cap from MERGECOORD_THREADS (0 = auto). The current engine is
/// sequential, so any cap is honored; the value is validated and recorded in
/// run manifests. Returns 0 when unset.
int thread_cap_from_env();

struct SimulateArgs {
  std::optional<std::string> config_path;
  double lambda1 = 0.1;
  double lambda2 = 0.1;
  double duration = 1200.0;
  std::string strategy = "grouping";
  std::uint64_t seed = 0;
  std::string out_dir;
};

struct AlignmentArgs {
  std::optional<std::string> config_path;
  double lambda = 0.1;
  int scenarios = 20;
  double horizon = 60.0;
  int max_vehicles = 12;
  std::uint64_t seed = 0;
  std::string out_dir;
  bool skip_over_budget = false;
};

struct HistogramArgs {
  std::optional<std::string> config_path;
  int n1 = 12;
  int n2 = 13;
  double lambda = 0.2;
  int bins = 50;
  std::uint64_t seed = 0;
  std::string out_dir;
};

struct ProbabilityArgs {
  double dt1 = 1.5;
  double dt2 = 2.5;
  double delta = 2.0;
  double lambda1 = 0.2;
  double lambda2 = 0.2;
  std::optional<std::uint64_t> mc_trials;
  std::uint64_t seed = 0;
  std::optional<std::string> out_dir;
};

int run_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int run_alignment(const AlignmentArgs& args, std::ostream& out, std::ostream& err);
int run_histogram(const HistogramArgs& args, std::ostream& out, std::ostream& err);
int run_probability(const ProbabilityArgs& args, std::ostream& out, std::ostream& err);

/// Fixed 6-decimal formatting used for all emitted seconds/probabilities.
std::string fixed6(double value);

}  // namespace mergecoord::cli
