#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ctmp/errors.hpp"
#include "ctmp/linalg.hpp"
#include "ctmp/presets.hpp"
#include "ctmp/rng.hpp"

#include "oracle_utils.hpp"

using namespace ctmp;

TEST_CASE("matrix exponential basics") {
  Matrix m(2, 2);
  m << 3.0, -1.0, 2.0, 0.5;
  CHECK((matrix_exponential(m, 0.0) - Matrix::Identity(2, 2))
            .lpNorm<Eigen::Infinity>() == 0.0);

  CHECK((matrix_exponential(Matrix::Zero(3, 3), 5.0) - Matrix::Identity(3, 3))
            .lpNorm<Eigen::Infinity>() == 0.0);

  Matrix nilpotent(2, 2);
  nilpotent << 0.0, 1.0, 0.0, 0.0;
  Matrix expected(2, 2);
  expected << 1.0, 2.0, 0.0, 1.0;
  CHECK((matrix_exponential(nilpotent, 2.0) - expected).lpNorm<Eigen::Infinity>() <=
        1e-15);

  Matrix bad = m;
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(matrix_exponential(bad, 1.0), NonFinite);
  CHECK_THROWS_AS(matrix_exponential(m, std::nan("")), NonFinite);
}

TEST_CASE("matrix exponential agrees with scaled Taylor oracle") {
  const TruncatedSubmatrix block = truncate(cftr_model(), 1);
  const Matrix got = matrix_exponential(block.U, 0.1);
  const Matrix expected = oracle::taylor_expm(block.U, 0.1);
  CHECK((got - expected).lpNorm<Eigen::Infinity>() <= 1e-10);
}

TEST_CASE("exp(W t) is column-stochastic for random generators") {
  Rng rng(303);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + static_cast<int>(rng.uniform01() * 7);
    const Matrix w = oracle::random_generator(n, rng);
    for (double t : {0.01, 0.1, 1.0, 10.0}) {
      const Matrix p = matrix_exponential(w, t);
      CHECK(p.minCoeff() >= -1e-12);
      for (int j = 0; j < n; ++j)
        CHECK(std::abs(p.col(j).sum() - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("semigroup property") {
  Rng rng(404);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 2 + static_cast<int>(rng.uniform01() * 6);
    const Matrix w = oracle::random_generator(n, rng);
    const double s = 0.3 + rng.uniform01();
    const double t = 0.1 + rng.uniform01();
    const Matrix lhs = matrix_exponential(w, s) * matrix_exponential(w, t);
    const Matrix rhs = matrix_exponential(w, s + t);
    CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() <= 1e-9);
  }
}

TEST_CASE("eigendecomposition of the symmetric chain block") {
  const double a = 1.0, b = 2.0;
  Matrix u(2, 2);
  u << -a, a, a, -(a + b);
  const SpectralData spec = eigendecompose(u);
  CHECK(spec.diagonalizable);
  CHECK(spec.distinct_count == 2);

  // Roots of lambda^2 + (2a+b) lambda + ab.
  const double lo = -2.0 - std::sqrt(2.0);
  const double hi = -2.0 + std::sqrt(2.0);
  std::vector<double> eigs = {spec.eigenvalues(0).real(), spec.eigenvalues(1).real()};
  std::sort(eigs.begin(), eigs.end());
  CHECK(eigs[0] == doctest::Approx(lo).epsilon(1e-12));
  CHECK(eigs[1] == doctest::Approx(hi).epsilon(1e-12));
  CHECK(std::abs(spec.eigenvalues(0).imag()) <= 1e-14);

  // Symmetric block: right eigenvectors are mutually orthogonal.
  const auto v1 = spec.right_vectors.col(0);
  const auto v2 = spec.right_vectors.col(1);
  CHECK(std::abs(v1.dot(v2)) <= 1e-10);
}

TEST_CASE("Jordan block is flagged non-diagonalizable") {
  const double w = 1.5;
  Matrix u(2, 2);
  u << -w, 0.0, w, -w;
  const SpectralData spec = eigendecompose(u);
  CHECK_FALSE(spec.diagonalizable);
  CHECK(spec.distinct_count == 1);
  CHECK(spec.eigenvalues(0).real() == doctest::Approx(-w).epsilon(1e-12));
  CHECK(spec.eigenvalues(1).real() == doctest::Approx(-w).epsilon(1e-12));
}

TEST_CASE("diagonal matrix decomposes to the standard basis") {
  Matrix u(2, 2);
  u << -1.0, 0.0, 0.0, -3.0;
  const SpectralData spec = eigendecompose(u);
  CHECK(spec.diagonalizable);
  CHECK(spec.distinct_count == 2);
  for (int i = 0; i < 2; ++i) {
    const int which = spec.eigenvalues(i).real() == doctest::Approx(-1.0) ? 0 : 1;
    CHECK(std::abs(std::abs(spec.right_vectors(which, i)) - 1.0) <= 1e-14);
  }
}

TEST_CASE("spectral invariants on random truncated blocks") {
  Rng rng(505);
  int diagonalizable_seen = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 3 + static_cast<int>(rng.uniform01() * 5);
    const RateModel model = validate_generator(
        oracle::random_generator(n, rng), oracle::random_observable_set(n, rng));
    const TruncatedSubmatrix block = truncate(model, rep % 2);
    const SpectralData spec = eigendecompose(block);
    if (!spec.diagonalizable) continue;
    ++diagonalizable_seen;

    const int k = static_cast<int>(block.U.rows());
    const Eigen::MatrixXcd recon = spec.right_vectors *
                                   spec.eigenvalues.asDiagonal() *
                                   spec.left_vectors.transpose();
    const double err =
        (recon - block.U.cast<std::complex<double>>()).cwiseAbs().rowwise().sum().maxCoeff();
    CHECK(err <= 1e-9 * std::max(inf_norm(block.U), 1e-300));

    // Biorthogonality, which for distinct eigenvalues is left/right
    // orthogonality across pairs.
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const std::complex<double> dot =
            spec.left_vectors.col(i).transpose() * spec.right_vectors.col(j);
        CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-9);
      }
  }
  CHECK(diagonalizable_seen > 10);
}

TEST_CASE("uniform-exchange hidden block has exactly two distinct eigenvalues") {
  // U = c J - (3c + d) I for the 3-state hidden block with pairwise rate c
  // and uniform exit rate d; spectrum follows from J's {3, 0, 0}.
  const double c = 1.0, d = 0.5;
  Matrix u = Matrix::Constant(3, 3, c);
  u.diagonal().setConstant(c - (3.0 * c + d));
  const SpectralData spec = eigendecompose(u);
  CHECK(spec.diagonalizable);
  CHECK(spec.distinct_count == 2);
  std::vector<double> eigs;
  for (int i = 0; i < 3; ++i) eigs.push_back(spec.eigenvalues(i).real());
  std::sort(eigs.begin(), eigs.end());
  CHECK(eigs[0] == doctest::Approx(-(3.0 * c + d)).epsilon(1e-12));
  CHECK(eigs[1] == doctest::Approx(-(3.0 * c + d)).epsilon(1e-12));
  CHECK(eigs[2] == doctest::Approx(-d).epsilon(1e-12));
}

TEST_CASE("propagator spectral path matches scaling-and-squaring") {
  Rng rng(606);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 3 + static_cast<int>(rng.uniform01() * 5);
    const RateModel model = validate_generator(
        oracle::random_generator(n, rng), oracle::random_observable_set(n, rng));
    const TruncatedSubmatrix block = truncate(model, rep % 2);
    const Propagator prop(block.U);
    const int k = static_cast<int>(block.U.rows());
    Vector v(k);
    for (int i = 0; i < k; ++i) v(i) = rng.uniform01();
    v /= v.sum();
    const double tau = 0.05 + 2.0 * rng.uniform01();
    CHECK((prop.apply(tau, v) - matrix_exponential(block.U, tau) * v)
              .lpNorm<Eigen::Infinity>() <= 1e-11);
    CHECK((prop.apply_transpose(tau, v) -
           matrix_exponential(block.U.transpose(), tau) * v)
              .lpNorm<Eigen::Infinity>() <= 1e-11);
  }
}
