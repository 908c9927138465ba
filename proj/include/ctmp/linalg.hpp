#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "ctmp/rate_model.hpp"

namespace ctmp {

/// exp(M * t) by scaling-and-squaring with Pade approximants (degree up to 13,
/// norm-based selection).
Matrix matrix_exponential(const Matrix& m, double t);

/// Eigenpairs of a truncated submatrix. Columns of right_vectors are the
/// right eigenvectors v_i; columns of left_vectors are the left eigenvectors
/// w_i, normalized so that w_i . v_j = delta_ij (unconjugated dot product).
struct SpectralData {
  Eigen::VectorXcd eigenvalues;
  Eigen::MatrixXcd right_vectors;
  Eigen::MatrixXcd left_vectors;
  bool diagonalizable = false;
  int distinct_count = 0;
  double condition = 0.0;  // condition number of the eigenvector matrix
};

SpectralData eigendecompose(const Matrix& u);
SpectralData eigendecompose(const TruncatedSubmatrix& u);

/// Indices of eigenvalues grouped by coincidence at tolerance tol.
std::vector<std::vector<int>> eigenvalue_groups(const Eigen::VectorXcd& eigenvalues,
                                                double tol);

/// Applies exp(U t) and exp(U^T t) to vectors. Uses the cached spectral form
/// when the block is diagonalizable with a well-conditioned eigenbasis and
/// falls back to scaling-and-squaring otherwise (e.g. Jordan blocks).
class Propagator {
 public:
  explicit Propagator(Matrix u);

  const Matrix& matrix() const { return u_; }
  const SpectralData& spectrum() const { return spectrum_; }
  bool spectral_path() const { return spectral_; }

  Vector apply(double t, const Vector& v) const;            // exp(U t) v
  Vector apply_transpose(double t, const Vector& v) const;  // exp(U^T t) v
  Matrix exponential(double t) const;                       // exp(U t)

 private:
  Matrix u_;
  SpectralData spectrum_;
  bool spectral_ = false;
  Eigen::MatrixXcd vinv_;
};

}  // namespace ctmp
