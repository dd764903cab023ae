#include <gtest/gtest.h>

#include "bayeserr/linalg.hpp"
#include "oracles.hpp"

using namespace bayeserr;
using linalg::SymMatrix;

namespace {

Eigen::MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(rows.size(), rows.begin()->size());
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

SymMatrix random_spd(std::mt19937_64& g, int d) {
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = oracle::uniform(g, -1, 1);
  return SymMatrix(a * a.transpose() + 0.1 * Eigen::MatrixXd::Identity(d, d));
}

}  // namespace

TEST(SymMatrix, RejectsAsymmetricAndNonSquare) {
  EXPECT_THROW(SymMatrix(mat({{1, 2}, {3, 1}})), DomainError);
  EXPECT_THROW(SymMatrix(Eigen::MatrixXd(2, 3)), DimensionMismatch);
  EXPECT_THROW(SymMatrix(Eigen::MatrixXd(0, 0)), DimensionMismatch);
}

TEST(SymMatrix, StoredExactlySymmetric) {
  const SymMatrix m(mat({{1, 0.5 + 1e-15}, {0.5, 2}}));
  EXPECT_EQ(m(0, 1), m(1, 0));
  EXPECT_EQ(SymMatrix::scaled_identity(3, 2.0), SymMatrix::diagonal({2, 2, 2}));
}

TEST(Cholesky, Examples) {
  EXPECT_TRUE(linalg::cholesky_spd(SymMatrix::identity(2)).isApprox(Eigen::MatrixXd::Identity(2, 2)));
  const auto l = linalg::cholesky_spd(SymMatrix(mat({{4, 0}, {0, 9}})));
  EXPECT_DOUBLE_EQ(l(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(l(1, 1), 3.0);
  EXPECT_DOUBLE_EQ(l(0, 1), 0.0);

  const auto m = mat({{2, 1}, {1, 2}});
  const auto l2 = linalg::cholesky_spd(SymMatrix(m));
  EXPECT_NEAR(l2(0, 0), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(l2(1, 0), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(l2(1, 1), std::sqrt(1.5), 1e-15);
  EXPECT_LE((l2 * l2.transpose() - m).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Cholesky, NotPositiveDefinite) {
  EXPECT_THROW(linalg::cholesky_spd(SymMatrix(mat({{1, 2}, {2, 1}}))), NotPositiveDefinite);
  EXPECT_THROW(linalg::cholesky_spd(SymMatrix(mat({{1, 1}, {1, 1}}))), NotPositiveDefinite);
  EXPECT_THROW(linalg::det_and_inverse_spd(SymMatrix::diagonal({1, -1})), NotPositiveDefinite);
}

TEST(Cholesky, RandomReconstruction) {
  auto g = oracle::rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 6;
    const SymMatrix m = random_spd(g, d);
    const auto l = linalg::cholesky_spd(m);
    EXPECT_LE((l * l.transpose() - m.matrix()).cwiseAbs().maxCoeff(), 1e-12);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) EXPECT_EQ(l(i, j), 0.0);
  }
}

TEST(DetInverse, Examples) {
  const auto r1 = linalg::det_and_inverse_spd(SymMatrix::identity(3));
  EXPECT_DOUBLE_EQ(r1.determinant, 1.0);
  EXPECT_TRUE(r1.inverse.matrix().isApprox(Eigen::MatrixXd::Identity(3, 3)));

  const auto r2 = linalg::det_and_inverse_spd(SymMatrix::scaled_identity(2, 10.0));
  EXPECT_NEAR(r2.determinant, 100.0, 1e-12);
  EXPECT_NEAR(r2.inverse(0, 0), 0.1, 1e-15);
  EXPECT_NEAR(r2.inverse(0, 1), 0.0, 1e-15);

  const auto r3 = linalg::det_and_inverse_spd(SymMatrix(mat({{2, 1}, {1, 2}})));
  // ad - bc and the adjugate
  EXPECT_NEAR(r3.determinant, 2.0 * 2.0 - 1.0 * 1.0, 1e-12);
  EXPECT_NEAR(r3.inverse(0, 0), 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(r3.inverse(0, 1), -1.0 / 3.0, 1e-14);
  EXPECT_NEAR(r3.log_determinant, std::log(3.0), 1e-14);
}

TEST(DetInverse, RandomAgainstEigenLu) {
  auto g = oracle::rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 5;
    const SymMatrix m = random_spd(g, d);
    const auto r = linalg::det_and_inverse_spd(m);
    EXPECT_NEAR(r.determinant, m.matrix().fullPivLu().determinant(), 1e-10 * std::abs(r.determinant));
    EXPECT_LE((r.inverse.matrix() * m.matrix() - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_NEAR(linalg::log_det_spd(m), std::log(r.determinant), 1e-10);
  }
}

TEST(PseudoInverse, Examples) {
  EXPECT_TRUE(linalg::pseudo_inverse_sym(SymMatrix::identity(2)).matrix().isApprox(Eigen::MatrixXd::Identity(2, 2)));
  const auto p = linalg::pseudo_inverse_sym(SymMatrix::diagonal({4, 0}));
  EXPECT_NEAR(p(0, 0), 0.25, 1e-15);
  EXPECT_NEAR(p(1, 1), 0.0, 1e-15);
  EXPECT_NEAR(p(0, 1), 0.0, 1e-15);
  const auto q = linalg::pseudo_inverse_sym(SymMatrix(mat({{1, 1}, {1, 1}})));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(q(i, j), 0.25, 1e-14);
}

TEST(PseudoInverse, PenroseConditionsOnRankDeficient) {
  auto g = oracle::rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 4;
    Eigen::MatrixXd b(d, d - 1);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d - 1; ++j) b(i, j) = oracle::uniform(g, -1, 1);
    const SymMatrix a(b * b.transpose());
    const Eigen::MatrixXd p = linalg::pseudo_inverse_sym(a).matrix();
    EXPECT_LE((a.matrix() * p * a.matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LE((p * a.matrix() * p - p).cwiseAbs().maxCoeff(), 1e-8 * (1 + p.cwiseAbs().maxCoeff()));
  }
}

TEST(SymmetricEigen, AscendingAndReconstructs) {
  auto g = oracle::rng(14);
  const SymMatrix m = random_spd(g, 4);
  const auto e = linalg::symmetric_eigen(m);
  for (int i = 1; i < 4; ++i) EXPECT_LE(e.values(i - 1), e.values(i));
  const Eigen::MatrixXd back = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
  EXPECT_LE((back - m.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(InverseQuadraticForm, MatchesExplicitInverse) {
  auto g = oracle::rng(15);
  const SymMatrix m = random_spd(g, 3);
  const auto v = linalg::make_vector({0.3, -1.2, 2.0});
  const double direct = v.dot(m.matrix().inverse() * v);
  EXPECT_NEAR(linalg::inverse_quadratic_form(linalg::cholesky_spd(m), v), direct, 1e-10 * direct);
}
