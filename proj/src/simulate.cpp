#include "ctmp/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "ctmp/errors.hpp"
#include "ctmp/rng.hpp"

namespace ctmp {

int Trajectory::state_at(double t) const {
  if (t < 0.0 || t > horizon)
    throw OutOfRange("trajectory queried outside [0, horizon]");
  const auto it = std::upper_bound(jump_times.begin(), jump_times.end(), t);
  const auto k = static_cast<std::size_t>(it - jump_times.begin());
  return k == 0 ? initial_state : jump_targets[k - 1];
}

nlohmann::json Trajectory::to_json() const {
  return {{"initial", initial_state},
          {"times", jump_times},
          {"targets", jump_targets},
          {"horizon", horizon}};
}

Trajectory Trajectory::from_json(const nlohmann::json& j) {
  Trajectory t;
  try {
    t.initial_state = j.at("initial").get<int>();
    t.jump_times = j.at("times").get<std::vector<double>>();
    t.jump_targets = j.at("targets").get<std::vector<int>>();
    t.horizon = j.at("horizon").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("trajectory JSON: ") + e.what());
  }
  if (t.jump_times.size() != t.jump_targets.size())
    throw ParseError("trajectory JSON: times and targets differ in length");
  double prev = 0.0;
  for (double x : t.jump_times) {
    if (!(x > prev) || x > t.horizon)
      throw InvalidTrace("trajectory jump times must be strictly increasing in (0, horizon]");
    prev = x;
  }
  int state = t.initial_state;
  for (int target : t.jump_targets) {
    if (target == state)
      throw InvalidTrace("trajectory jumps must change the state");
    state = target;
  }
  return t;
}

int ObservationTrace::value_at(double t) const {
  if (t < 0.0 || t > horizon)
    throw OutOfRange("observation trace queried outside [0, horizon]");
  const auto it =
      std::upper_bound(transition_times.begin(), transition_times.end(), t);
  const auto flips = static_cast<std::size_t>(it - transition_times.begin());
  return (initial_value + static_cast<int>(flips)) % 2;
}

void ObservationTrace::validate() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw InvalidTrace("observation trace horizon must be positive and finite");
  if (initial_value != 0 && initial_value != 1)
    throw InvalidTrace("observation initial value must be 0 or 1");
  double prev = 0.0;
  for (double t : transition_times) {
    if (!(t > prev) || !(t < horizon))
      throw InvalidTrace(
          "observation transition times must be strictly increasing in (0, horizon)");
    prev = t;
  }
}

nlohmann::json ObservationTrace::to_json() const {
  return {{"y0", initial_value}, {"times", transition_times}, {"horizon", horizon}};
}

ObservationTrace ObservationTrace::from_json(const nlohmann::json& j) {
  ObservationTrace t;
  try {
    t.initial_value = j.at("y0").get<int>();
    t.transition_times = j.at("times").get<std::vector<double>>();
    t.horizon = j.at("horizon").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("observation trace JSON: ") + e.what());
  }
  t.validate();
  return t;
}

Trajectory gillespie(const RateModel& model, double horizon,
                     std::optional<int> initial, std::uint64_t seed) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw OutOfRange("simulation horizon must be positive and finite");
  if (initial && (*initial < 0 || *initial >= model.n()))
    throw OutOfRange("initial state index outside the model state space");

  Rng rng(seed);
  const int n = model.n();
  int state;
  if (initial) {
    state = *initial;
  } else {
    std::vector<double> weights(model.pi().data(), model.pi().data() + n);
    state = rng.categorical(weights, 1.0);
  }

  Trajectory traj;
  traj.initial_state = state;
  traj.horizon = horizon;

  std::vector<double> column(n);
  double t = 0.0;
  while (true) {
    const double exit_rate = -model.W()(state, state);
    if (exit_rate <= 0.0) {
      traj.absorbed = true;
      return traj;  // path is constant from here to the horizon
    }
    t += rng.exponential(exit_rate);
    if (t > horizon) return traj;
    for (int j = 0; j < n; ++j) column[j] = j == state ? 0.0 : model.W()(j, state);
    state = rng.categorical(column, exit_rate);
    traj.jump_times.push_back(t);
    traj.jump_targets.push_back(state);
  }
}

ObservationTrace observe(const Trajectory& trajectory, const RateModel& model) {
  ObservationTrace trace;
  trace.horizon = trajectory.horizon;
  if (trajectory.initial_state < 0 || trajectory.initial_state >= model.n())
    throw OutOfRange("trajectory initial state outside the model state space");
  trace.initial_value = model.observable(trajectory.initial_state) ? 1 : 0;
  int current = trace.initial_value;
  for (std::size_t k = 0; k < trajectory.jump_times.size(); ++k) {
    const int target = trajectory.jump_targets[k];
    if (target < 0 || target >= model.n())
      throw OutOfRange("trajectory state outside the model state space");
    const int value = model.observable(target) ? 1 : 0;
    if (value != current && trajectory.jump_times[k] < trajectory.horizon) {
      trace.transition_times.push_back(trajectory.jump_times[k]);
      current = value;
    }
  }
  return trace;
}

ObservationTrace change_point_trace(const SampledObservations& samples) {
  if (samples.values.empty())
    throw EmptyGrid("cannot build a trace from an empty sampled record");
  ObservationTrace trace;
  trace.initial_value = samples.initial_value;
  trace.horizon = static_cast<double>(samples.values.size()) * samples.dt;
  int value = samples.initial_value;
  for (std::size_t k = 0; k < samples.values.size(); ++k) {
    if (samples.values[k] != value) {
      trace.transition_times.push_back(
          (static_cast<double>(k) + 0.5) * samples.dt);
      value = samples.values[k];
    }
  }
  return trace;
}

int grid_size(double horizon, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw OutOfRange("sampling step must be positive and finite");
  int k = static_cast<int>(std::floor(horizon / dt));
  while (static_cast<double>(k + 1) * dt <= horizon) ++k;
  while (k > 0 && static_cast<double>(k) * dt > horizon) --k;
  return k;
}

SampledObservations sample(const ObservationTrace& trace, double dt) {
  trace.validate();
  const int k_max = grid_size(trace.horizon, dt);
  if (k_max == 0)
    throw EmptyGrid("sampling step exceeds the trace horizon; no grid points");

  SampledObservations out;
  out.dt = dt;
  out.initial_value = trace.initial_value;
  out.values.reserve(k_max);
  int value = trace.initial_value;
  std::size_t next_flip = 0;
  for (int k = 1; k <= k_max; ++k) {
    const double t = static_cast<double>(k) * dt;
    while (next_flip < trace.transition_times.size() &&
           trace.transition_times[next_flip] <= t) {
      value ^= 1;
      ++next_flip;
    }
    out.values.push_back(value);
  }
  return out;
}

}  // namespace ctmp
