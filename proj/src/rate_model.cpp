#include "ctmp/rate_model.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "ctmp/errors.hpp"

namespace ctmp {

Matrix submatrix(const Matrix& m, const std::vector<int>& rows,
                 const std::vector<int>& cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = m(rows[r], cols[c]);
  return out;
}

Vector gather(const Vector& v, const std::vector<int>& idx) {
  Vector out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out(i) = v(idx[i]);
  return out;
}

void scatter_into(Vector& full, const std::vector<int>& idx, const Vector& part) {
  for (std::size_t i = 0; i < idx.size(); ++i) full(idx[i]) = part(i);
}

double inf_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

namespace {

// Stationary distribution as the null vector of W, from a rank-revealing SVD.
// Uniqueness requires the second-smallest singular value to be clearly
// nonzero relative to the scale of W.
Vector compute_stationary(const Matrix& w) {
  const int n = static_cast<int>(w.rows());
  const double scale = std::max(inf_norm(w), 1e-300);
  Eigen::JacobiSVD<Matrix> svd(w, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(n - 2) < 1e-10 * scale)
    throw NonIrreducible("null space of W is not one-dimensional; "
                         "the stationary distribution is not unique");

  Vector v = svd.matrixV().col(n - 1);
  const double total = v.sum();
  if (std::abs(total) < 1e-12) {
    throw NonIrreducible("null vector of W has vanishing mass and cannot be "
                         "normalized to a distribution");
  }
  v /= total;
  const double residual = (w * v).lpNorm<Eigen::Infinity>();
  if (residual > 1e-10 * scale)
    throw NonIrreducible("candidate stationary vector does not satisfy W*pi = 0");
  for (int i = 0; i < n; ++i) {
    if (v(i) < -1e-9)
      throw NonIrreducible("null vector of W is not sign-definite");
    v(i) = std::max(v(i), 0.0);
  }
  v /= v.sum();
  return v;
}

}  // namespace

RateModel::RateModel(Matrix generator, std::vector<int> observable_set,
                     std::vector<std::string> labels)
    : w_(std::move(generator)) {
  if (w_.rows() != w_.cols())
    throw InvalidDimension("generator matrix must be square");
  const int n = static_cast<int>(w_.rows());
  if (n < 2 || n > 64)
    throw InvalidDimension("state count must be in [2, 64], got " +
                           std::to_string(n));
  if (!w_.allFinite()) throw NonFinite("generator matrix has non-finite entries");

  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (i != j && w_(i, j) < 0.0) throw NegativeOffDiagonal(i + 1, j + 1, w_(i, j));

  for (int j = 0; j < n; ++j) {
    const double colsum = w_.col(j).sum();
    if (std::abs(colsum) > 1e-12) throw ColumnSumNonzero(j + 1, colsum);
  }

  std::sort(observable_set.begin(), observable_set.end());
  observable_set.erase(std::unique(observable_set.begin(), observable_set.end()),
                       observable_set.end());
  for (int s : observable_set)
    if (s < 0 || s >= n)
      throw OutOfRange("observable state index " + std::to_string(s) +
                       " outside [0, " + std::to_string(n - 1) + "]");
  if (observable_set.empty()) throw EmptyObservableSet();
  if (static_cast<int>(observable_set.size()) == n) throw FullObservableSet();
  observable_ = std::move(observable_set);
  for (int s = 0; s < n; ++s)
    if (!std::binary_search(observable_.begin(), observable_.end(), s))
      hidden_.push_back(s);

  if (labels.empty()) {
    for (int s = 0; s < n; ++s) labels.push_back(std::to_string(s + 1));
  } else if (static_cast<int>(labels.size()) != n) {
    throw InvalidDimension("label count does not match state count");
  }
  labels_ = std::move(labels);

  pi_ = compute_stationary(w_);
}

bool RateModel::observable(int state) const {
  return std::binary_search(observable_.begin(), observable_.end(), state);
}

RateModel validate_generator(const Matrix& raw, const std::vector<int>& observable_set,
                             std::vector<std::string> labels) {
  return RateModel(raw, observable_set, std::move(labels));
}

Vector stationary_distribution(const RateModel& model) { return model.pi(); }

TruncatedSubmatrix truncate(const RateModel& model, int observation_value) {
  const auto& active = model.active_set(observation_value);
  return TruncatedSubmatrix{active, submatrix(model.W(), active, active)};
}

}  // namespace ctmp
