#include "ctmp/analytic.hpp"

#include <cmath>
#include <complex>

#include "ctmp/errors.hpp"
#include "ctmp/linalg.hpp"

namespace ctmp {

namespace {

Vector embed3(const std::vector<int>& hidden_states, double p_first, double p_second) {
  Vector full = Vector::Zero(3);
  full(hidden_states[0]) = p_first;
  full(hidden_states[1]) = p_second;
  return full;
}

}  // namespace

Vector ClosedFormPosterior::evaluate(double t) const {
  if (t < 0.0 || t > T) throw OutOfRange("closed-form posterior queried outside [0, T]");
  switch (case_tag) {
    case ClosedFormCase::SymmetricChain: {
      const double mix = std::exp(lambda1 * (T - t) + lambda2 * t) +
                         std::exp(lambda1 * t + lambda2 * (T - t));
      const Vector rho = calA * mix + calB;
      return embed3(hidden_states, rho(0) / Z, rho(1) / Z);
    }
    case ClosedFormCase::LoopDistinct: {
      // rho/Z with the common factor e^{-w13 T} divided out; expm1 keeps the
      // near-equal-rate regime accurate.
      const double delta = rate2 - rate1;  // w13 - w32
      const double p_second = std::expm1(delta * t) / std::expm1(delta * T);
      return embed3(hidden_states, 1.0 - p_second, p_second);
    }
    case ClosedFormCase::LoopEqual:
      return embed3(hidden_states, (T - t) / T, t / T);
  }
  throw OutOfRange("unknown closed-form case");
}

ClosedFormPosterior symmetric_chain_posterior(double a, double b, double T) {
  if (!(a > 0.0) || !(b > 0.0) || !(T > 0.0))
    throw OutOfRange("symmetric chain closed form requires a, b, T > 0");

  ClosedFormPosterior out;
  out.case_tag = ClosedFormCase::SymmetricChain;
  out.rate1 = a;
  out.rate2 = b;
  out.T = T;
  out.hidden_states = {0, 1};

  // Characteristic polynomial of [[-a, a], [a, -(a+b)]]:
  // lambda^2 + (2a+b) lambda + ab = 0.
  const double half_trace = -(a + 0.5 * b);
  const double disc = std::sqrt(a * a + 0.25 * b * b);
  out.lambda1 = half_trace + disc;
  out.lambda2 = half_trace - disc;

  out.v1 = Vector(2);
  out.v1 << a, a + out.lambda1;
  out.v2 = Vector(2);
  out.v2 << a, a + out.lambda2;

  // alpha(0) = (0, 1); the block is symmetric so v1 and v2 are orthogonal.
  Vector alpha0(2);
  alpha0 << 0.0, 1.0;
  out.A = out.v1.dot(alpha0) / out.v1.squaredNorm();
  out.B = out.v2.dot(alpha0) / out.v2.squaredNorm();

  out.calA = out.A * out.B * out.v1.cwiseProduct(out.v2);
  out.calB = out.A * out.A * std::exp(out.lambda1 * T) * out.v1.cwiseProduct(out.v1) +
             out.B * out.B * std::exp(out.lambda2 * T) * out.v2.cwiseProduct(out.v2);
  out.Z = out.calB.sum();
  return out;
}

ClosedFormPosterior loop_posterior(double w32, double w13, double T) {
  if (!(w32 > 0.0) || !(w13 > 0.0) || !(T > 0.0))
    throw OutOfRange("loop closed form requires w32, w13, T > 0");

  ClosedFormPosterior out;
  out.rate1 = w32;
  out.rate2 = w13;
  out.T = T;
  out.hidden_states = {1, 2};

  if (std::abs(w32 - w13) > 1e-9 * std::max(w32, w13)) {
    out.case_tag = ClosedFormCase::LoopDistinct;
    out.lambda1 = -w32;
    out.lambda2 = -w13;
    const double gamma = w32 / (w13 - w32);
    out.v1 = Vector(2);
    out.v1 << 1.0, gamma;
    out.v2 = Vector(2);
    out.v2 << 0.0, 1.0;
    out.A = 1.0;
    out.B = -gamma;
    out.calA = Vector(2);
    out.calA << -1.0, 1.0;
    out.calB = Vector(2);
    out.calB << std::exp(-w32 * T), -std::exp(-w13 * T);
    out.Z = out.calB.sum();
  } else {
    out.case_tag = ClosedFormCase::LoopEqual;
    out.lambda1 = out.lambda2 = -w32;
    out.calA = Vector::Zero(2);
    out.calB = Vector(2);
    out.calB << std::exp(-w32 * T) * T, 0.0;
    out.Z = T * std::exp(-w32 * T);
  }
  return out;
}

SecondOrderCheck second_order_residual(const SegmentSolution& segment,
                                       const std::vector<double>& probe_times) {
  const SpectralData spectrum = eigendecompose(segment.propagator->matrix());
  if (!spectrum.diagonalizable) throw NotDiagonalizable();
  if (spectrum.distinct_count != 2) throw NotTwoEigenvalues(spectrum.distinct_count);

  const double unorm = inf_norm(segment.propagator->matrix());
  const auto groups = eigenvalue_groups(spectrum.eigenvalues, 1e-9 * unorm);

  const std::complex<double> lambda_1 = spectrum.eigenvalues(groups[0][0]);
  const std::complex<double> lambda_2 = spectrum.eigenvalues(groups[1][0]);
  const double coefficient = ((lambda_1 - lambda_2) * (lambda_1 - lambda_2)).real();

  const double T = segment.sojourn.length();
  const int k = static_cast<int>(segment.sojourn.active_set.size());

  // Constant part of rho from the spectral projectors: only like-eigenvalue
  // terms survive, C = sum_g e^{lambda_g T} (P_g alpha0) .* (P_g^T betaT).
  Eigen::VectorXcd constant_term = Eigen::VectorXcd::Zero(k);
  const Eigen::VectorXcd alpha0 = segment.alpha0.cast<std::complex<double>>();
  const Eigen::VectorXcd betaT = segment.betaT.cast<std::complex<double>>();
  for (const auto& group : groups) {
    Eigen::MatrixXcd projector = Eigen::MatrixXcd::Zero(k, k);
    for (int i : group)
      projector += spectrum.right_vectors.col(i) * spectrum.left_vectors.col(i).transpose();
    const std::complex<double> lambda = spectrum.eigenvalues(group[0]);
    constant_term += std::exp(lambda * T) *
                     (projector * alpha0).cwiseProduct(projector.transpose() * betaT);
  }
  Vector asymptote = constant_term.real();
  asymptote /= asymptote.sum();

  const double h = 1e-5 * T;
  const auto p_at = [&](double t) {
    Vector rho = segment.alpha_at(t).cwiseProduct(segment.beta_at(t));
    return Vector(rho / rho.sum());
  };

  double residual = 0.0;
  for (double t : probe_times) {
    if (t - h < segment.sojourn.start || t + h > segment.sojourn.end)
      throw OutOfRange("probe time too close to the sojourn boundary for the stencil");
    const Vector second_diff =
        (p_at(t + h) - 2.0 * p_at(t) + p_at(t - h)) / (h * h);
    const Vector defect = second_diff - coefficient * (p_at(t) - asymptote);
    residual = std::max(residual, defect.cwiseAbs().maxCoeff());
  }
  return SecondOrderCheck{coefficient, asymptote, residual};
}

DiscretePosterior closed_form_table(const ClosedFormPosterior& cf, double grid_dt) {
  const int steps = grid_size(cf.T, grid_dt);
  DiscretePosterior out;
  out.dt = grid_dt;
  out.probs = Matrix::Zero(steps, cf.n_states);
  out.logZ.assign(steps, std::log(std::abs(cf.Z)));
  for (int k = 1; k <= steps; ++k)
    out.probs.row(k - 1) = cf.evaluate(static_cast<double>(k) * grid_dt);
  return out;
}

double normalization_drift(const SegmentSolution& segment, int probes) {
  if (probes < 2) throw OutOfRange("normalization drift needs at least 2 probes");
  const double start = segment.sojourn.start;
  const double step = segment.sojourn.length() / (probes + 1);
  double reference = 0.0;
  double drift = 0.0;
  for (int j = 1; j <= probes; ++j) {
    const double t = start + j * step;
    const double z = segment.alpha_at(t).dot(segment.beta_at(t));
    if (j == 1) {
      reference = z;
      continue;
    }
    drift = std::max(drift, std::abs(z - reference) / std::abs(reference));
  }
  return drift;
}

}  // namespace ctmp
