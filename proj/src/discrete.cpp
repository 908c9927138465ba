#include "ctmp/discrete.hpp"

#include <cmath>

#include "ctmp/errors.hpp"
#include "ctmp/linalg.hpp"

namespace ctmp {

Matrix discrete_transition_matrix(const RateModel& model, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw OutOfRange("transition matrix step must be positive and finite");
  return matrix_exponential(model.W(), dt);
}

DiscretePosterior forward_backward_masked(const Matrix& transition,
                                          const std::vector<Vector>& masks,
                                          const RateModel& model, double dt) {
  const int n = model.n();
  if (transition.rows() != n || transition.cols() != n)
    throw InvalidDimension("transition matrix does not match the model dimension");
  if (masks.size() < 2)
    throw EmptyGrid("forward/backward needs at least one grid point");
  const int steps = static_cast<int>(masks.size()) - 1;

  Matrix alphas(steps, n);
  std::vector<double> log_alpha(steps);

  Vector a = model.pi().cwiseProduct(masks[0]);
  double mass = a.sum();
  if (mass <= 0.0) throw ZeroLikelihood(0.0);
  a /= mass;
  double la = 0.0;

  for (int k = 1; k <= steps; ++k) {
    a = masks[k].cwiseProduct(transition * a);
    mass = a.sum();
    if (mass <= 0.0) throw ZeroLikelihood(static_cast<double>(k) * dt);
    a /= mass;
    la += std::log(mass);
    alphas.row(k - 1) = a;
    log_alpha[k - 1] = la;
  }

  DiscretePosterior out;
  out.dt = dt;
  out.probs.resize(steps, n);
  out.logZ.resize(steps);

  Vector b = Vector::Ones(n) / static_cast<double>(n);
  double lb = std::log(static_cast<double>(n));
  for (int k = steps; k >= 1; --k) {
    const Vector alpha_k = alphas.row(k - 1);
    Vector rho = alpha_k.cwiseProduct(b);
    const double z = rho.sum();
    if (z <= 0.0) throw ZeroLikelihood(static_cast<double>(k) * dt);
    out.probs.row(k - 1) = rho / z;
    out.logZ[k - 1] = std::log(z) + log_alpha[k - 1] + lb;
    if (k > 1) {
      b = transition.transpose() * masks[k].cwiseProduct(b);
      const double bmass = b.sum();
      if (bmass <= 0.0) throw ZeroLikelihood(static_cast<double>(k - 1) * dt);
      b /= bmass;
      lb += std::log(bmass);
    }
  }
  return out;
}

DiscretePosterior forward_backward(const Matrix& transition,
                                   const SampledObservations& observations,
                                   const RateModel& model) {
  if (observations.values.empty())
    throw EmptyGrid("sampled observation sequence is empty");
  const int n = model.n();
  Vector mask_of[2] = {Vector::Zero(n), Vector::Zero(n)};
  for (int v : {0, 1})
    for (int s : model.active_set(v)) mask_of[v](s) = 1.0;

  std::vector<Vector> masks;
  masks.reserve(observations.values.size() + 1);
  masks.push_back(mask_of[observations.initial_value]);
  for (int y : observations.values) {
    if (y != 0 && y != 1) throw InvalidTrace("sampled observation values must be 0 or 1");
    masks.push_back(mask_of[y]);
  }
  return forward_backward_masked(transition, masks, model, observations.dt);
}

}  // namespace ctmp
