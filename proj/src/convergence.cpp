#include "ctmp/convergence.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "ctmp/continuous.hpp"
#include "ctmp/csv.hpp"
#include "ctmp/discrete.hpp"
#include "ctmp/errors.hpp"
#include "ctmp/version.hpp"

namespace ctmp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                        double* intercept) {
  const std::size_t n = x.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / denom;
  if (intercept) *intercept = (sy - slope * sx) / n;
  return slope;
}

ConvergenceReport run_convergence(const RateModel& model,
                                  const ConvergenceOptions& options,
                                  const std::string& model_name) {
  if (options.dt_list.size() < 3)
    throw InsufficientGrid("dt list needs at least 3 values");
  std::vector<double> dts = options.dt_list;
  std::sort(dts.begin(), dts.end(), std::greater<>());
  for (double dt : dts)
    if (!(dt > 0.0)) throw InsufficientGrid("dt values must be positive");
  if (dts.front() / dts.back() < 100.0 * (1.0 - 1e-12))
    throw InsufficientGrid("dt list must span at least two decades");
  if (options.n_trials < 1) throw OutOfRange("trial count must be positive");
  if (!(options.horizon > 0.0)) throw OutOfRange("horizon must be positive");

  const std::size_t n_dt = dts.size();
  std::vector<Matrix> transition(n_dt);
  for (std::size_t d = 0; d < n_dt; ++d)
    transition[d] = discrete_transition_matrix(model, dts[d]);

  ConvergenceReport report;
  report.model_name = model_name;
  report.horizon = options.horizon;
  report.n_trials = options.n_trials;
  report.seed = options.seed;
  report.dt = dts;
  report.max_diffs.assign(n_dt, {});
  report.discrete_seconds.assign(n_dt, 0.0);
  report.query_seconds.assign(n_dt, 0.0);

  std::vector<long> query_counts(n_dt, 0);

  for (int trial = 0; trial < options.n_trials; ++trial) {
    std::uint64_t trial_seed = options.seed + static_cast<std::uint64_t>(trial);
    while (true) {
      try {
        const Trajectory traj =
            gillespie(model, options.horizon, std::nullopt, trial_seed);
        const ObservationTrace trace = observe(traj, model);

        for (std::size_t d = 0; d < n_dt; ++d) {
          // Both algorithms see the same binned record: the continuous one
          // runs on the change-point trace recovered from the samples.
          const SampledObservations obs = sample(trace, dts[d]);
          const PosteriorFunction pf(model, change_point_trace(obs));

          const auto t_discrete = Clock::now();
          const DiscretePosterior dp = forward_backward(transition[d], obs, model);
          report.discrete_seconds[d] += seconds_since(t_discrete);

          double max_diff = 0.0;
          const auto t_query = Clock::now();
          for (int k = 1; k <= dp.steps(); ++k) {
            const Vector pc = pf.query(static_cast<double>(k) * dts[d]);
            max_diff = std::max(
                max_diff, (pc.transpose() - dp.probs.row(k - 1)).cwiseAbs().maxCoeff());
          }
          report.query_seconds[d] += seconds_since(t_query);
          query_counts[d] += dp.steps();
          report.max_diffs[d].push_back(max_diff);
        }
        break;
      } catch (const ZeroLikelihood&) {
        trial_seed += static_cast<std::uint64_t>(options.n_trials);
        ++report.zero_likelihood_reruns;
      }
    }
  }

  report.mean_err.resize(n_dt);
  report.sd_err.resize(n_dt);
  for (std::size_t d = 0; d < n_dt; ++d) {
    const auto& diffs = report.max_diffs[d];
    double mean = 0.0;
    for (double v : diffs) mean += v;
    mean /= diffs.size();
    double var = 0.0;
    for (double v : diffs) var += (v - mean) * (v - mean);
    var = diffs.size() > 1 ? var / (diffs.size() - 1) : 0.0;
    report.mean_err[d] = mean;
    report.sd_err[d] = std::sqrt(var);
  }

  report.slope = fit_loglog_slope(report.dt, report.mean_err, &report.intercept);

  std::vector<double> inv_dt(n_dt);
  for (std::size_t d = 0; d < n_dt; ++d) inv_dt[d] = 1.0 / dts[d];
  report.discrete_time_exponent = fit_loglog_slope(inv_dt, report.discrete_seconds);

  for (std::size_t d = 0; d < n_dt; ++d)
    report.query_seconds[d] /= static_cast<double>(query_counts[d]);
  const auto [qmin, qmax] =
      std::minmax_element(report.query_seconds.begin(), report.query_seconds.end());
  report.query_time_spread = *qmax / *qmin;

  return report;
}

nlohmann::json ConvergenceReport::to_json() const {
  return {{"version", kVersion},
          {"model", model_name},
          {"horizon", horizon},
          {"trials", n_trials},
          {"seed", seed},
          {"zero_likelihood_reruns", zero_likelihood_reruns},
          {"dt", dt},
          {"max_diffs", max_diffs},
          {"mean_max_diff", mean_err},
          {"sd_max_diff", sd_err},
          {"slope", slope},
          {"intercept", intercept},
          {"discrete_seconds", discrete_seconds},
          {"continuous_query_seconds", query_seconds},
          {"discrete_time_exponent", discrete_time_exponent},
          {"query_time_spread", query_time_spread}};
}

void ConvergenceReport::write_csv(std::ostream& out) const {
  out << "dt,mean_max_diff,sd_max_diff,discrete_seconds,continuous_query_seconds\n";
  for (std::size_t d = 0; d < dt.size(); ++d) {
    out << format_double(dt[d]) << "," << format_double(mean_err[d]) << ","
        << format_double(sd_err[d]) << "," << format_double(discrete_seconds[d])
        << "," << format_double(query_seconds[d]) << "\n";
  }
}

}  // namespace ctmp
