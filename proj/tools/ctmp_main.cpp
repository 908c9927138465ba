#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctmp/continuous.hpp"
#include "ctmp/convergence.hpp"
#include "ctmp/csv.hpp"
#include "ctmp/discrete.hpp"
#include "ctmp/errors.hpp"
#include "ctmp/model_io.hpp"
#include "ctmp/presets.hpp"
#include "ctmp/rng.hpp"
#include "ctmp/simulate.hpp"
#include "ctmp/version.hpp"

namespace {

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ctmp::ParseError("cannot write output file '" + path + "'");
  out << contents;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

struct SimulateArgs {
  std::string model;
  double horizon = 0.0;
  std::uint64_t seed = 0;
  std::optional<double> dt;
  std::optional<int> initial;
  std::string out_prefix;
};

int run_simulate(const SimulateArgs& args) {
  const ctmp::RateModel model = ctmp::load_model_spec(args.model);
  std::optional<int> initial;
  if (args.initial) {
    if (*args.initial < 1 || *args.initial > model.n())
      throw ctmp::OutOfRange("--initial must name a state in 1.." +
                             std::to_string(model.n()));
    initial = *args.initial - 1;
  }
  const ctmp::Trajectory traj =
      ctmp::gillespie(model, args.horizon, initial, args.seed);
  const ctmp::ObservationTrace trace = ctmp::observe(traj, model);

  write_json_file(args.out_prefix + ".trajectory.json", traj.to_json());
  write_json_file(args.out_prefix + ".trace.json", trace.to_json());
  if (args.dt) {
    const ctmp::SampledObservations samples = ctmp::sample(trace, *args.dt);
    std::ostringstream csv;
    ctmp::write_samples_csv(csv, samples);
    write_text_file(args.out_prefix + ".samples.csv", csv.str());
  }

  std::cout << "simulated horizon " << args.horizon << " with seed " << args.seed
            << ": " << traj.jump_times.size() << " jumps, "
            << trace.transition_times.size() << " observation transitions"
            << (traj.absorbed ? " (absorbing state reached)" : "") << "\n";
  return 0;
}

struct InferArgs {
  std::string model;
  std::string trace_path;
  std::string mode;
  std::optional<double> dt;
  std::optional<double> grid_dt;
  std::string out_path;
};

ctmp::ObservationTrace load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ctmp::ParseError("cannot open trace file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ctmp::ParseError("trace file '" + path + "': " + e.what());
  }
  return ctmp::ObservationTrace::from_json(j);
}

int run_infer(const InferArgs& args) {
  const ctmp::RateModel model = ctmp::load_model_spec(args.model);
  const ctmp::ObservationTrace trace = load_trace(args.trace_path);

  ctmp::DiscretePosterior table;
  if (args.mode == "discrete") {
    if (!args.dt) throw ctmp::OutOfRange("discrete mode requires --dt");
    const ctmp::SampledObservations obs = ctmp::sample(trace, *args.dt);
    const ctmp::Matrix transition = ctmp::discrete_transition_matrix(model, *args.dt);
    table = ctmp::forward_backward(transition, obs, model);
    std::cout << "discrete posterior: " << table.steps() << " grid steps at dt "
              << *args.dt << "\n";
  } else if (args.mode == "continuous") {
    if (!args.grid_dt) throw ctmp::OutOfRange("continuous mode requires --grid-dt");
    const ctmp::PosteriorFunction pf(model, trace);
    table = pf.query_dense(*args.grid_dt);

    // Per-query cost over a spread of interior times, reported for the
    // constant-cost claim.
    const int probes = 1000;
    ctmp::Rng rng(12345);
    std::vector<double> times(probes);
    for (double& t : times) t = rng.uniform01() * trace.horizon;
    const auto start = std::chrono::steady_clock::now();
    double checksum = 0.0;
    for (double t : times) checksum += pf.query(t).sum();
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    (void)checksum;
    std::cout << "continuous posterior: " << pf.segments().size() << " segments, "
              << table.steps() << " grid rows, per-query cost "
              << elapsed / probes * 1e6 << " us\n";
  } else {
    throw ctmp::OutOfRange("--mode must be 'discrete' or 'continuous'");
  }

  std::ostringstream csv;
  ctmp::write_posterior_csv(csv, table);
  write_text_file(args.out_path, csv.str());
  return 0;
}

struct ConvergenceArgs {
  std::string model;
  double horizon = 10.0;
  int trials = 40;
  std::string dt_list = "1e-2,3e-3,1e-3,3e-4,1e-4";
  std::uint64_t seed = 0;
  std::string out_prefix;
};

int run_convergence_cmd(const ConvergenceArgs& args) {
  const ctmp::RateModel model = ctmp::load_model_spec(args.model);
  ctmp::ConvergenceOptions options;
  options.horizon = args.horizon;
  options.n_trials = args.trials;
  options.seed = args.seed;
  std::stringstream ss(args.dt_list);
  std::string item;
  while (std::getline(ss, item, ',')) options.dt_list.push_back(std::stod(item));

  const ctmp::ConvergenceReport report =
      ctmp::run_convergence(model, options, args.model);
  write_json_file(args.out_prefix + ".json", report.to_json());
  std::ostringstream csv;
  report.write_csv(csv);
  write_text_file(args.out_prefix + ".csv", csv.str());

  std::cout << "convergence over " << report.dt.size() << " step sizes, "
            << report.n_trials << " trials: slope " << report.slope
            << ", discrete time exponent " << report.discrete_time_exponent
            << ", query time spread " << report.query_time_spread << "x\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hidden-state inference for partially observed continuous-time "
               "Markov processes"};
  app.set_version_flag("--version", std::string(ctmp::kVersion));
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand(
      "simulate", "Sample a trajectory and its binary observation trace");
  simulate->add_option("--model", sim.model, "Model JSON path or preset:NAME")
      ->required();
  simulate->add_option("--horizon", sim.horizon, "Simulation horizon")->required();
  simulate->add_option("--seed", sim.seed, "RNG seed")->required();
  simulate->add_option("--dt", sim.dt,
                       "Also write observations sampled at this step");
  simulate->add_option("--initial", sim.initial,
                       "Initial state (1-based); stationary draw when omitted");
  simulate->add_option("--out", sim.out_prefix,
                       "Output prefix (.trajectory.json, .trace.json, .samples.csv)")
      ->required();

  InferArgs inf;
  auto* infer = app.add_subcommand(
      "infer", "Posterior occupancy from an observation trace");
  infer->add_option("--model", inf.model, "Model JSON path or preset:NAME")
      ->required();
  infer->add_option("--trace", inf.trace_path, "Observation trace JSON")->required();
  infer->add_option("--mode", inf.mode, "discrete or continuous")->required();
  infer->add_option("--dt", inf.dt, "Sampling step (discrete mode)");
  infer->add_option("--grid-dt", inf.grid_dt, "Output grid step (continuous mode)");
  infer->add_option("--out", inf.out_path, "Posterior CSV path")->required();

  ConvergenceArgs conv;
  auto* convergence = app.add_subcommand(
      "convergence", "Discrete-vs-continuous discrepancy and timing study");
  convergence->add_option("--model", conv.model, "Model JSON path or preset:NAME")
      ->required();
  convergence->add_option("--horizon", conv.horizon, "Simulation horizon per trial");
  convergence->add_option("--trials", conv.trials, "Number of independent trials");
  convergence->add_option("--dt-list", conv.dt_list,
                          "Comma-separated sampling steps");
  convergence->add_option("--seed", conv.seed, "Base seed; trial i uses seed+i");
  convergence->add_option("--out", conv.out_prefix, "Output prefix (.json, .csv)")
      ->required();

  auto* presets = app.add_subcommand("presets", "List built-in models");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (infer->parsed()) return run_infer(inf);
    if (convergence->parsed()) return run_convergence_cmd(conv);
    if (presets->parsed()) {
      std::cout << ctmp::preset_help();
      return 0;
    }
  } catch (const ctmp::Error& e) {
    std::cerr << e.name() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
