#include "ctmp/linalg.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "ctmp/errors.hpp"

namespace ctmp {

Matrix matrix_exponential(const Matrix& m, double t) {
  if (m.rows() != m.cols())
    throw InvalidDimension("matrix exponential requires a square matrix");
  if (m.rows() > 64)
    throw InvalidDimension("matrix exponential limited to order 64");
  if (!m.allFinite() || !std::isfinite(t))
    throw NonFinite("matrix exponential input has non-finite entries");
  if (t == 0.0) return Matrix::Identity(m.rows(), m.cols());
  return Matrix((m * t).exp());
}

std::vector<std::vector<int>> eigenvalue_groups(const Eigen::VectorXcd& eigenvalues,
                                                double tol) {
  std::vector<std::vector<int>> groups;
  std::vector<std::complex<double>> reps;
  for (int i = 0; i < eigenvalues.size(); ++i) {
    bool placed = false;
    for (std::size_t g = 0; g < reps.size(); ++g) {
      if (std::abs(eigenvalues(i) - reps[g]) <= tol) {
        groups[g].push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) {
      groups.push_back({i});
      reps.push_back(eigenvalues(i));
    }
  }
  return groups;
}

SpectralData eigendecompose(const Matrix& u) {
  if (u.rows() != u.cols())
    throw InvalidDimension("eigendecomposition requires a square matrix");
  if (!u.allFinite()) throw NonFinite("eigendecomposition input has non-finite entries");

  Eigen::EigenSolver<Matrix> solver(u);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("eigensolver failed to converge");

  SpectralData out;
  out.eigenvalues = solver.eigenvalues();
  out.right_vectors = solver.eigenvectors();

  const int k = static_cast<int>(u.rows());
  const double unorm = inf_norm(u);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(out.right_vectors,
                                         Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues()(k - 1);
  out.condition = smin > 0.0 ? svd.singularValues()(0) / smin
                             : std::numeric_limits<double>::infinity();

  Eigen::MatrixXcd vinv;
  if (std::isfinite(out.condition)) {
    vinv = out.right_vectors.fullPivLu().solve(Eigen::MatrixXcd::Identity(k, k));
  } else {
    vinv = svd.solve(Eigen::MatrixXcd::Identity(k, k));  // pseudo-inverse
  }
  out.left_vectors = vinv.transpose();

  const Eigen::MatrixXcd recon =
      out.right_vectors * out.eigenvalues.asDiagonal() * vinv;
  const double recon_err = (recon - u.cast<std::complex<double>>())
                               .cwiseAbs().rowwise().sum().maxCoeff();
  out.diagonalizable = std::isfinite(out.condition) && out.condition <= 1e8 &&
                       recon_err <= 1e-9 * std::max(unorm, 1e-300);

  out.distinct_count = static_cast<int>(
      eigenvalue_groups(out.eigenvalues, 1e-9 * unorm).size());
  return out;
}

SpectralData eigendecompose(const TruncatedSubmatrix& u) {
  return eigendecompose(u.U);
}

Propagator::Propagator(Matrix u) : u_(std::move(u)), spectrum_(eigendecompose(u_)) {
  // Spectral evaluation amplifies roundoff by roughly the eigenbasis
  // condition number; stay an order of magnitude inside the 1e-9 message
  // tolerances.
  spectral_ = spectrum_.diagonalizable && spectrum_.condition < 1e4;
  if (spectral_) {
    vinv_ = spectrum_.right_vectors.fullPivLu().solve(
        Eigen::MatrixXcd::Identity(u_.rows(), u_.cols()));
  }
}

Vector Propagator::apply(double t, const Vector& v) const {
  if (!spectral_) return matrix_exponential(u_, t) * v;
  Eigen::VectorXcd coeff = vinv_ * v.cast<std::complex<double>>();
  for (int i = 0; i < coeff.size(); ++i)
    coeff(i) *= std::exp(spectrum_.eigenvalues(i) * t);
  return (spectrum_.right_vectors * coeff).real();
}

Vector Propagator::apply_transpose(double t, const Vector& v) const {
  if (!spectral_) return matrix_exponential(u_.transpose(), t) * v;
  // exp(U^T t) = V^{-T} exp(Lambda t) V^T
  Eigen::VectorXcd coeff =
      spectrum_.right_vectors.transpose() * v.cast<std::complex<double>>();
  for (int i = 0; i < coeff.size(); ++i)
    coeff(i) *= std::exp(spectrum_.eigenvalues(i) * t);
  return (vinv_.transpose() * coeff).real();
}

Matrix Propagator::exponential(double t) const { return matrix_exponential(u_, t); }

}  // namespace ctmp
