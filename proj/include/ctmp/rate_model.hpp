#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace ctmp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

Matrix submatrix(const Matrix& m, const std::vector<int>& rows,
                 const std::vector<int>& cols);
Vector gather(const Vector& v, const std::vector<int>& idx);
void scatter_into(Vector& full, const std::vector<int>& idx, const Vector& part);
double inf_norm(const Matrix& m);

/// Validated continuous-time generator in the column convention: W(j, i) is
/// the rate from state i to state j, every column sums to zero. States are
/// 0-based internally; labels carry the user-facing names.
class RateModel {
 public:
  RateModel(Matrix generator, std::vector<int> observable_set,
            std::vector<std::string> labels = {});

  int n() const { return static_cast<int>(w_.rows()); }
  const Matrix& W() const { return w_; }
  const Vector& pi() const { return pi_; }
  const std::vector<int>& observable_set() const { return observable_; }
  const std::vector<int>& hidden_set() const { return hidden_; }
  const std::vector<int>& active_set(int observation_value) const {
    return observation_value ? observable_ : hidden_;
  }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Rate from state `from` to state `to` (both 0-based).
  double rate(int from, int to) const { return w_(to, from); }
  bool observable(int state) const;

 private:
  Matrix w_;
  std::vector<int> observable_;
  std::vector<int> hidden_;
  std::vector<std::string> labels_;
  Vector pi_;
};

RateModel validate_generator(const Matrix& raw, const std::vector<int>& observable_set,
                             std::vector<std::string> labels = {});

Vector stationary_distribution(const RateModel& model);

/// Block of W restricted to the states consistent with one observation value.
/// Diagonal entries are the original W diagonals, so column sums account for
/// the outflow that leaves the active set.
struct TruncatedSubmatrix {
  std::vector<int> active_set;
  Matrix U;
};

TruncatedSubmatrix truncate(const RateModel& model, int observation_value);

}  // namespace ctmp
