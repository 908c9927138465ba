#include "ctmp/continuous.hpp"

#include <algorithm>
#include <cmath>

#include "ctmp/errors.hpp"

namespace ctmp {

namespace {

constexpr double kMinSojourn = 1e-12;

std::array<std::shared_ptr<const Propagator>, 2> make_propagators(
    const RateModel& model) {
  return {std::make_shared<const Propagator>(truncate(model, 0).U),
          std::make_shared<const Propagator>(truncate(model, 1).U)};
}

struct PassData {
  std::vector<Vector> values;      // alpha0 (forward) or betaT (backward)
  std::vector<double> log_scales;  // accumulated divided-out factors
};

PassData run_forward(const RateModel& model, const std::vector<Sojourn>& sojourns,
                     const std::array<std::shared_ptr<const Propagator>, 2>& props) {
  PassData out;
  out.values.resize(sojourns.size());
  out.log_scales.resize(sojourns.size());

  Vector a = gather(model.pi(), sojourns.front().active_set);
  double mass = a.sum();
  if (mass <= 0.0) throw ZeroLikelihood(0.0);
  a /= mass;
  double log_scale = 0.0;

  for (std::size_t s = 0; s < sojourns.size(); ++s) {
    out.values[s] = a;
    out.log_scales[s] = log_scale;
    if (s + 1 == sojourns.size()) break;

    const Sojourn& cur = sojourns[s];
    Vector a_end = props[cur.observation_value]->apply(cur.length(), a);
    const double end_mass = a_end.sum();
    if (!(end_mass > 0.0)) throw ZeroBoundaryFlux(cur.end);
    a_end /= end_mass;
    a = boundary_forward_update(model, cur.active_set,
                                sojourns[s + 1].active_set, a_end, cur.end);
    log_scale += std::log(end_mass);
  }
  return out;
}

PassData run_backward(const RateModel& model, const std::vector<Sojourn>& sojourns,
                      const std::array<std::shared_ptr<const Propagator>, 2>& props) {
  PassData out;
  out.values.resize(sojourns.size());
  out.log_scales.resize(sojourns.size());

  const std::size_t m = sojourns.size();
  Vector b = Vector::Ones(sojourns.back().active_set.size());
  b /= b.sum();
  double log_scale = 0.0;

  for (std::size_t idx = m; idx-- > 0;) {
    out.values[idx] = b;
    out.log_scales[idx] = log_scale;
    if (idx == 0) break;

    const Sojourn& cur = sojourns[idx];
    Vector b_start = props[cur.observation_value]->apply_transpose(cur.length(), b);
    const double start_mass = b_start.sum();
    if (!(start_mass > 0.0)) throw ZeroBoundaryFlux(cur.start);
    b_start /= start_mass;
    b = boundary_backward_update(model, sojourns[idx - 1].active_set,
                                 cur.active_set, b_start, cur.start);
    log_scale += std::log(start_mass);
  }
  return out;
}

Vector normalized_product(const Vector& a, const Vector& b, double time) {
  Vector rho = a.cwiseProduct(b).cwiseMax(0.0);
  const double z = rho.sum();
  if (!(z > 0.0)) throw ZeroLikelihood(time);
  return rho / z;
}

}  // namespace

std::vector<Sojourn> segment(const ObservationTrace& trace, const RateModel& model) {
  trace.validate();

  std::vector<double> boundaries;
  boundaries.reserve(trace.transition_times.size() + 2);
  boundaries.push_back(0.0);
  boundaries.insert(boundaries.end(), trace.transition_times.begin(),
                    trace.transition_times.end());
  boundaries.push_back(trace.horizon);

  std::vector<Sojourn> sojourns;
  sojourns.reserve(boundaries.size() - 1);
  int value = trace.initial_value;
  for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
    Sojourn s;
    s.start = boundaries[i];
    s.end = boundaries[i + 1];
    if (s.length() < kMinSojourn) throw DegenerateSojourn(s.start);
    s.observation_value = value;
    s.active_set = model.active_set(value);
    sojourns.push_back(std::move(s));
    value ^= 1;
  }
  return sojourns;
}

Vector boundary_forward_update(const RateModel& model,
                               const std::vector<int>& from_active,
                               const std::vector<int>& to_active,
                               const Vector& alpha_end, double boundary_time) {
  Vector raw(to_active.size());
  for (std::size_t j = 0; j < to_active.size(); ++j) {
    double flux = 0.0;
    for (std::size_t i = 0; i < from_active.size(); ++i)
      flux += model.W()(to_active[j], from_active[i]) * alpha_end(i);
    raw(j) = flux;
  }
  const double total = raw.sum();
  if (!(total > 0.0)) throw ZeroBoundaryFlux(boundary_time);
  return raw / total;
}

Vector boundary_backward_update(const RateModel& model,
                                const std::vector<int>& earlier_active,
                                const std::vector<int>& later_active,
                                const Vector& beta_start, double boundary_time) {
  Vector raw(earlier_active.size());
  for (std::size_t j = 0; j < earlier_active.size(); ++j) {
    double flux = 0.0;
    for (std::size_t i = 0; i < later_active.size(); ++i)
      flux += model.W()(later_active[i], earlier_active[j]) * beta_start(i);
    raw(j) = flux;
  }
  const double total = raw.sum();
  if (!(total > 0.0)) throw ZeroBoundaryFlux(boundary_time);
  return raw / total;
}

std::vector<Vector> forward_pass(const RateModel& model,
                                 const std::vector<Sojourn>& sojourns) {
  return run_forward(model, sojourns, make_propagators(model)).values;
}

std::vector<Vector> backward_pass(const RateModel& model,
                                  const std::vector<Sojourn>& sojourns) {
  return run_backward(model, sojourns, make_propagators(model)).values;
}

SegmentSolution::SegmentSolution(const RateModel& model, Sojourn s, Vector a0,
                                 Vector bT)
    : sojourn(std::move(s)),
      propagator(std::make_shared<const Propagator>(
          submatrix(model.W(), sojourn.active_set, sojourn.active_set))),
      alpha0(std::move(a0)),
      betaT(std::move(bT)) {}

Vector SegmentSolution::alpha_at(double t) const {
  return propagator->apply(t - sojourn.start, alpha0);
}

Vector SegmentSolution::beta_at(double t) const {
  return propagator->apply_transpose(sojourn.end - t, betaT);
}

PosteriorFunction::PosteriorFunction(const RateModel& model,
                                     const ObservationTrace& trace)
    : model_(model), horizon_(trace.horizon), propagators_(make_propagators(model)) {
  const auto sojourns = segment(trace, model);
  const auto forward = run_forward(model, sojourns, propagators_);
  const auto backward = run_backward(model, sojourns, propagators_);

  segments_.resize(sojourns.size());
  starts_.reserve(sojourns.size());
  for (std::size_t s = 0; s < sojourns.size(); ++s) {
    SegmentSolution seg;
    seg.sojourn = sojourns[s];
    seg.propagator = propagators_[sojourns[s].observation_value];
    seg.alpha0 = forward.values[s];
    seg.betaT = backward.values[s];
    seg.log_scale_alpha = forward.log_scales[s];
    seg.log_scale_beta = backward.log_scales[s];
    starts_.push_back(sojourns[s].start);
    segments_[s] = std::move(seg);
  }
}

int PosteriorFunction::segment_index(double t) const {
  if (t < 0.0 || t > horizon_)
    throw OutOfRange("query time outside [0, horizon]");
  const auto it = std::upper_bound(starts_.begin(), starts_.end(), t);
  return static_cast<int>(it - starts_.begin()) - 1;
}

Vector PosteriorFunction::query(double t) const {
  const SegmentSolution& seg = segments_[segment_index(t)];
  const Vector p =
      normalized_product(seg.alpha_at(t), seg.beta_at(t), t);
  Vector full = Vector::Zero(model_.n());
  scatter_into(full, seg.sojourn.active_set, p);
  return full;
}

DiscretePosterior PosteriorFunction::query_dense(double grid_dt) const {
  const int steps = grid_size(horizon_, grid_dt);
  const int n = model_.n();

  DiscretePosterior out;
  out.dt = grid_dt;
  out.probs = Matrix::Zero(steps, n);
  out.logZ.assign(steps, 0.0);
  if (steps == 0) return out;

  // One-step propagators, shared by every sojourn with the same observation.
  Matrix step_of[2] = {propagators_[0]->exponential(grid_dt),
                       propagators_[1]->exponential(grid_dt)};

  int row = 0;
  while (row < steps) {
    const double t0 = static_cast<double>(row + 1) * grid_dt;
    const int seg_idx = segment_index(t0);
    const SegmentSolution& seg = segments_[seg_idx];

    int count = 1;  // grid rows that fall in this segment
    while (row + count < steps &&
           segment_index(static_cast<double>(row + count + 1) * grid_dt) == seg_idx)
      ++count;

    const Matrix& step = step_of[seg.sojourn.observation_value];
    const auto& active = seg.sojourn.active_set;
    const int k = static_cast<int>(active.size());

    // Forward sweep for alpha, backward sweep for beta, both renormalized per
    // point with the factors tracked so logZ stays meaningful.
    Matrix a_vals(k, count), b_vals(k, count);
    Vector a_log(count), b_log(count);

    Vector a = seg.alpha_at(t0);
    double la = 0.0;
    for (int c = 0; c < count; ++c) {
      if (c > 0) a = step * a;
      const double mass = a.cwiseAbs().sum();
      if (mass > 0.0) {
        a /= mass;
        la += std::log(mass);
      }
      a_vals.col(c) = a;
      a_log(c) = la;
    }

    const double t_last = static_cast<double>(row + count) * grid_dt;
    Vector b = seg.beta_at(t_last);
    double lb = 0.0;
    for (int c = count - 1; c >= 0; --c) {
      if (c < count - 1) b = step.transpose() * b;
      const double mass = b.cwiseAbs().sum();
      if (mass > 0.0) {
        b /= mass;
        lb += std::log(mass);
      }
      b_vals.col(c) = b;
      b_log(c) = lb;
    }

    for (int c = 0; c < count; ++c) {
      const double t = static_cast<double>(row + c + 1) * grid_dt;
      Vector rho = a_vals.col(c).cwiseProduct(b_vals.col(c)).cwiseMax(0.0);
      const double z = rho.sum();
      if (!(z > 0.0)) throw ZeroLikelihood(t);
      Vector full = Vector::Zero(n);
      scatter_into(full, active, Vector(rho / z));
      out.probs.row(row + c) = full;
      out.logZ[row + c] = std::log(z) + a_log(c) + b_log(c) +
                          seg.log_scale_alpha + seg.log_scale_beta;
    }
    row += count;
  }
  return out;
}

PosteriorFunction posterior(const RateModel& model, const ObservationTrace& trace) {
  return PosteriorFunction(model, trace);
}

}  // namespace ctmp
