#include <iostream>

#include <CLI11.hpp>

#include "mergecoord/cli.hpp"

int main(int argc, char** argv) {
  using namespace mergecoord;

  CLI::App app{"Cooperative-driving coordination for a two-movement on-ramp merge"};
  app.set_version_flag("--version", std::string(cli::kToolName) + " " + cli::kToolVersion);
  app.require_subcommand(1);

  cli::SimulateArgs sim_args;
  CLI::App* sim = app.add_subcommand("simulate", "Rolling-horizon traffic simulation");
  std::string sim_config, align_config, hist_config;
  sim->add_option("--config", sim_config, "Params file (flat key=value)");
  sim->add_option("--lambda1", sim_args.lambda1, "Main-lane arrival rate, veh/s");
  sim->add_option("--lambda2", sim_args.lambda2, "Ramp-lane arrival rate, veh/s");
  sim->add_option("--duration", sim_args.duration, "Simulated horizon, s");
  sim->add_option("--strategy", sim_args.strategy, "planning|fifo|grouping");
  sim->add_option("--seed", sim_args.seed, "RNG seed");
  sim->add_option("--out", sim_args.out_dir, "Output directory")->required();

  cli::AlignmentArgs align_args;
  CLI::App* align = app.add_subcommand("alignment", "Grouping rank across sampled scenarios");
  align->add_option("--config", align_config, "Params file (flat key=value)");
  align->add_option("--lambda", align_args.lambda, "Arrival rate per lane, veh/s");
  align->add_option("--scenarios", align_args.scenarios, "Number of sampled scenarios");
  align->add_option("--horizon", align_args.horizon, "Arrival horizon per scenario, s");
  align->add_option("--max-vehicles", align_args.max_vehicles, "Cap on vehicles per scenario");
  align->add_option("--seed", align_args.seed, "RNG seed");
  align->add_option("--out", align_args.out_dir, "Output directory")->required();
  align->add_flag("--skip-over-budget", align_args.skip_over_budget,
                  "Skip scenarios whose order count exceeds the budget");

  cli::HistogramArgs hist_args;
  CLI::App* hist = app.add_subcommand("histogram", "Objective histogram over all orders");
  hist->add_option("--config", hist_config, "Params file (flat key=value)");
  hist->add_option("--n1", hist_args.n1, "Main-lane vehicle count");
  hist->add_option("--n2", hist_args.n2, "Ramp-lane vehicle count");
  hist->add_option("--lambda", hist_args.lambda, "Arrival rate per lane, veh/s");
  hist->add_option("--bins", hist_args.bins, "Histogram bin count");
  hist->add_option("--seed", hist_args.seed, "RNG seed");
  hist->add_option("--out", hist_args.out_dir, "Output directory")->required();

  cli::ProbabilityArgs prob_args;
  std::uint64_t mc_trials = 0;
  std::string prob_out;
  CLI::App* prob = app.add_subcommand("probability",
                                      "Four-vehicle special-case probability");
  prob->add_option("--dt1", prob_args.dt1, "Same-movement safety gap, s");
  prob->add_option("--dt2", prob_args.dt2, "Conflict-movement safety gap, s");
  prob->add_option("--delta", prob_args.delta, "Grouping threshold, s");
  prob->add_option("--lambda1", prob_args.lambda1, "Lane-1 arrival rate, veh/s");
  prob->add_option("--lambda2", prob_args.lambda2, "Lane-2 arrival rate, veh/s");
  CLI::Option* trials_opt =
      prob->add_option("--mc-trials", mc_trials, "Monte-Carlo trials (0 = closed form only)");
  prob->add_option("--seed", prob_args.seed, "RNG seed");
  CLI::Option* prob_out_opt = prob->add_option("--out", prob_out, "Optional output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cli::kExitInvalidInput;
  }

  try {
    (void)cli::thread_cap_from_env();  // validated once, recorded in manifests
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitInvalidInput;
  }

  if (sim->parsed()) {
    if (!sim_config.empty()) sim_args.config_path = sim_config;
    return cli::run_simulate(sim_args, std::cout, std::cerr);
  }
  if (align->parsed()) {
    if (!align_config.empty()) align_args.config_path = align_config;
    return cli::run_alignment(align_args, std::cout, std::cerr);
  }
  if (hist->parsed()) {
    if (!hist_config.empty()) hist_args.config_path = hist_config;
    return cli::run_histogram(hist_args, std::cout, std::cerr);
  }
  if (prob->parsed()) {
    if (trials_opt->count() > 0 && mc_trials > 0) prob_args.mc_trials = mc_trials;
    if (prob_out_opt->count() > 0) prob_args.out_dir = prob_out;
    return cli::run_probability(prob_args, std::cout, std::cerr);
  }
  return cli::kExitInvalidInput;
}
