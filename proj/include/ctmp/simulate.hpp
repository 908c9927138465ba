#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "ctmp/rate_model.hpp"

namespace ctmp {

/// Piecewise-constant sample path of the latent process on [0, horizon].
/// State indices are 0-based; the path is right-continuous at jumps.
struct Trajectory {
  int initial_state = 0;
  std::vector<double> jump_times;   // strictly increasing, in (0, horizon]
  std::vector<int> jump_targets;    // state after each jump
  double horizon = 0.0;
  bool absorbed = false;  // reached a state with no outgoing rate before horizon

  int state_at(double t) const;
  nlohmann::json to_json() const;
  static Trajectory from_json(const nlohmann::json& j);
};

/// The binary observable Y(t): initial value plus the times where it flips.
struct ObservationTrace {
  int initial_value = 0;
  std::vector<double> transition_times;  // strictly increasing, in (0, horizon)
  double horizon = 0.0;

  int value_at(double t) const;  // right-continuous
  void validate() const;
  nlohmann::json to_json() const;
  static ObservationTrace from_json(const nlohmann::json& j);
};

/// Y sampled on the uniform grid dt, 2*dt, ..., K*dt with K*dt <= horizon.
/// initial_value records Y(0), which the discrete algorithm needs to mask
/// the stationary distribution at the start of the forward pass.
struct SampledObservations {
  double dt = 0.0;
  int initial_value = 0;
  std::vector<int> values;  // values[k-1] = Y(k*dt)
};

/// Exact stochastic simulation: exponential holding times with rate -W(i,i),
/// jump targets drawn proportional to the off-diagonal column entries.
/// `initial` = nullopt draws the initial state from the stationary
/// distribution using the same seeded stream.
Trajectory gillespie(const RateModel& model, double horizon,
                     std::optional<int> initial, std::uint64_t seed);

ObservationTrace observe(const Trajectory& trajectory, const RateModel& model);

SampledObservations sample(const ObservationTrace& trace, double dt);

/// Trace implied by a sampled record alone: one transition per sign change
/// of consecutive samples, placed at the bin midpoint, horizon K*dt. This is
/// what both inference algorithms see when only binned data exists;
/// re-sampling it at the same dt reproduces the input exactly.
ObservationTrace change_point_trace(const SampledObservations& samples);

/// Largest K with K*dt <= horizon (exact, robust to floating-point division).
int grid_size(double horizon, double dt);

}  // namespace ctmp
