#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctmp/rate_model.hpp"

namespace ctmp {

struct ConvergenceOptions {
  double horizon = 10.0;
  int n_trials = 40;
  std::vector<double> dt_list;
  std::uint64_t seed = 0;
};

/// Ensemble comparison of the discrete and continuous algorithms: per-dt
/// max-infinity-norm discrepancies over the sampling grid, the fitted
/// log-log slope, and wall-time measurements for the cost-scaling claim.
struct ConvergenceReport {
  std::string model_name;
  double horizon = 0.0;
  int n_trials = 0;
  std::uint64_t seed = 0;
  int zero_likelihood_reruns = 0;

  std::vector<double> dt;                       // descending
  std::vector<std::vector<double>> max_diffs;   // [dt][trial]
  std::vector<double> mean_err;
  std::vector<double> sd_err;
  double slope = 0.0;      // log mean_err vs log dt
  double intercept = 0.0;

  std::vector<double> discrete_seconds;     // forward/backward wall time per dt
  std::vector<double> query_seconds;        // continuous per-query time per dt
  double discrete_time_exponent = 0.0;      // log discrete_seconds vs log(1/dt)
  double query_time_spread = 0.0;           // max/min of query_seconds

  nlohmann::json to_json() const;
  void write_csv(std::ostream& out) const;
};

/// Least-squares slope of y against x on log-log axes.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                        double* intercept = nullptr);

/// Runs the full study: per trial, simulate a trajectory, observe it, run the
/// discrete algorithm on each sampled grid and compare against the continuous
/// posterior queried at the same grid points. Trials hitting ZeroLikelihood
/// are rerun with a shifted seed and counted. Single-threaded so the timing
/// columns are meaningful.
ConvergenceReport run_convergence(const RateModel& model,
                                  const ConvergenceOptions& options,
                                  const std::string& model_name);

}  // namespace ctmp
