#pragma once

#include <array>
#include <memory>
#include <vector>

#include "ctmp/discrete.hpp"
#include "ctmp/linalg.hpp"
#include "ctmp/rate_model.hpp"
#include "ctmp/simulate.hpp"

namespace ctmp {

/// Maximal interval on which the observation is constant.
struct Sojourn {
  double start = 0.0;
  double end = 0.0;
  int observation_value = 0;
  std::vector<int> active_set;

  double length() const { return end - start; }
};

/// Splits [0, horizon] at the observation transition times. Sojourns tile the
/// window exactly and alternate observation value starting from Y(0).
std::vector<Sojourn> segment(const ObservationTrace& trace, const RateModel& model);

/// Message transfer across an observation transition at boundary_time: the
/// next segment's initial forward message is the rate-weighted flow from the
/// closing active set into the opening one, renormalized.
Vector boundary_forward_update(const RateModel& model,
                               const std::vector<int>& from_active,
                               const std::vector<int>& to_active,
                               const Vector& alpha_end, double boundary_time);

/// Backward counterpart: the closing segment's terminal backward message is
/// the rate-weighted pullback of the opening segment's initial value.
Vector boundary_backward_update(const RateModel& model,
                                const std::vector<int>& earlier_active,
                                const std::vector<int>& later_active,
                                const Vector& beta_start, double boundary_time);

/// Initial forward messages per segment (unit 1-norm on each active set).
std::vector<Vector> forward_pass(const RateModel& model,
                                 const std::vector<Sojourn>& sojourns);

/// Terminal backward messages per segment (unit 1-norm on each active set).
std::vector<Vector> backward_pass(const RateModel& model,
                                  const std::vector<Sojourn>& sojourns);

/// Per-sojourn message representation: alpha0 at the segment start and betaT
/// at the segment end, both rescaled to unit 1-norm with the divided-out
/// positive factors accumulated in the log_scale fields. The messages at any
/// interior time follow by propagating with exp(U tau).
struct SegmentSolution {
  Sojourn sojourn;
  std::shared_ptr<const Propagator> propagator;
  Vector alpha0;
  Vector betaT;
  double log_scale_alpha = 0.0;
  double log_scale_beta = 0.0;

  SegmentSolution() = default;
  SegmentSolution(const RateModel& model, Sojourn s, Vector alpha0, Vector betaT);

  TruncatedSubmatrix block() const {
    return TruncatedSubmatrix{sojourn.active_set, propagator->matrix()};
  }
  Vector alpha_at(double t) const;  // exp(U (t - start)) alpha0
  Vector beta_at(double t) const;   // exp(U^T (end - t)) betaT
};

/// Piecewise description of the conditional occupancy p(t). Immutable after
/// construction; queries are safe from concurrent threads.
class PosteriorFunction {
 public:
  PosteriorFunction(const RateModel& model, const ObservationTrace& trace);

  const RateModel& model() const { return model_; }
  double horizon() const { return horizon_; }
  const std::vector<SegmentSolution>& segments() const { return segments_; }

  /// Segment containing t under the right-continuous convention.
  int segment_index(double t) const;

  /// p(t) over all n states; zero off the active set of t's sojourn.
  Vector query(double t) const;

  /// p on the grid dt, 2*dt, ..., K*dt, using one incremental propagator per
  /// sojourn instead of a fresh exponential per point.
  DiscretePosterior query_dense(double grid_dt) const;

 private:
  RateModel model_;
  double horizon_;
  std::vector<SegmentSolution> segments_;
  std::vector<double> starts_;
  std::array<std::shared_ptr<const Propagator>, 2> propagators_;
};

PosteriorFunction posterior(const RateModel& model, const ObservationTrace& trace);

}  // namespace ctmp
