#pragma once

#include <vector>

#include "ctmp/continuous.hpp"
#include "ctmp/rate_model.hpp"

namespace ctmp {

enum class ClosedFormCase { SymmetricChain, LoopDistinct, LoopEqual };

/// Closed-form conditional occupancy for one hidden sojourn of the two
/// worked 3-state systems: the symmetric chain (hidden pair {1,2}, entry and
/// exit through state 3) and the irreversible loop (hidden pair {2,3}, entry
/// at 2, exit through 3). Times are local to the sojourn, t in [0, T].
struct ClosedFormPosterior {
  ClosedFormCase case_tag;
  double rate1 = 0.0;  // a   (chain)  or w32 (loop)
  double rate2 = 0.0;  // b   (chain)  or w13 (loop)
  double T = 0.0;

  // Spectral data of the 2x2 hidden block (LoopEqual keeps the single
  // eigenvalue in lambda1 = lambda2).
  double lambda1 = 0.0, lambda2 = 0.0;
  Vector v1, v2;
  double A = 0.0, B = 0.0;  // expansion coefficients of the forward message
  Vector calA, calB;        // time-dependent and constant parts of rho
  double Z = 0.0;           // componentwise sum of the constant part

  std::vector<int> hidden_states;  // 0-based indices within the 3-state model
  int n_states = 3;

  /// p at local time t, embedded in the full state vector.
  Vector evaluate(double t) const;
};

ClosedFormPosterior symmetric_chain_posterior(double a, double b, double T);
ClosedFormPosterior loop_posterior(double w32, double w13, double T);

/// Verification of the second-order form p'' = (lambda1 - lambda2)^2 (p - p_inf)
/// on one sojourn, with p'' from central finite differences at step 1e-5 * T.
struct SecondOrderCheck {
  double coefficient = 0.0;  // (lambda1 - lambda2)^2
  Vector asymptote;          // p_inf over the active set
  double residual = 0.0;     // max defect over probes and components
};

SecondOrderCheck second_order_residual(const SegmentSolution& segment,
                                       const std::vector<double>& probe_times);

/// Max relative drift of Z(t) = sum_k alpha_k(t) beta_k(t) over evenly spaced
/// interior probe points of the sojourn. The segment's constant rescaling
/// factors cancel in the ratio.
double normalization_drift(const SegmentSolution& segment, int probes);

/// Closed form evaluated on the grid dt, 2*dt, ..., K*dt for side-by-side
/// comparison with dense posterior tables (same CSV schema).
DiscretePosterior closed_form_table(const ClosedFormPosterior& cf, double grid_dt);

}  // namespace ctmp
