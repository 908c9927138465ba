#pragma once

#include <vector>

#include "ctmp/rate_model.hpp"
#include "ctmp/simulate.hpp"

namespace ctmp {

/// Posterior occupancy on a uniform grid: row k-1 holds p at time k*dt for
/// k = 1..K. logZ keeps the per-step log normalizer (constant in exact
/// arithmetic) for diagnostics.
struct DiscretePosterior {
  double dt = 0.0;
  Matrix probs;  // K x n
  std::vector<double> logZ;

  int steps() const { return static_cast<int>(probs.rows()); }
  double time(int row) const { return static_cast<double>(row + 1) * dt; }
};

/// P = exp(W * dt), the column-stochastic one-step matrix of the induced
/// discrete-time chain.
Matrix discrete_transition_matrix(const RateModel& model, double dt);

/// Classical forward/backward smoothing on the sampled observations.
/// The forward message starts from the stationary distribution masked to the
/// states consistent with Y(0) and renormalized; the observation mask is
/// applied at every step from the first grid point on. Messages are rescaled
/// to unit 1-norm each step with the log factors folded into logZ.
DiscretePosterior forward_backward(const Matrix& transition,
                                   const SampledObservations& observations,
                                   const RateModel& model);

/// Same algorithm with explicit per-step masks (masks[0] applies to the
/// initial message, masks[k] to grid point k*dt). An all-ones mask encodes
/// "no observation" at that step.
DiscretePosterior forward_backward_masked(const Matrix& transition,
                                          const std::vector<Vector>& masks,
                                          const RateModel& model, double dt);

}  // namespace ctmp
