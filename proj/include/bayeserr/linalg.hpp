#pragma once

// Dense symmetric-matrix kernel for the small (d <= ~32) scale and shape
// matrices the distribution families carry.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <string>
#include <utility>

#include "bayeserr/error.hpp"

namespace bayeserr::linalg {

using Vector = Eigen::VectorXd;

inline Vector make_vector(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

// Symmetric d x d matrix. Construction symmetrises the input, so
// (i, j) and (j, i) always hold the same bits.
class SymMatrix {
 public:
  explicit SymMatrix(const Eigen::MatrixXd& m) {
    if (m.rows() < 1 || m.rows() != m.cols()) {
      throw DimensionMismatch("SymMatrix: need a square matrix with dim >= 1");
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      throw DomainError("SymMatrix: input is not symmetric");
    }
    data_ = 0.5 * (m + m.transpose());
  }

  static SymMatrix identity(int d) {
    return SymMatrix(Eigen::MatrixXd::Identity(d, d));
  }

  static SymMatrix diagonal(const Vector& diag) {
    return SymMatrix(Eigen::MatrixXd(diag.asDiagonal()));
  }

  static SymMatrix diagonal(std::initializer_list<double> diag) {
    return diagonal(make_vector(diag));
  }

  static SymMatrix scaled_identity(int d, double s) {
    return SymMatrix(s * Eigen::MatrixXd::Identity(d, d));
  }

  int dim() const { return static_cast<int>(data_.rows()); }
  double operator()(int i, int j) const { return data_(i, j); }
  const Eigen::MatrixXd& matrix() const { return data_; }

  SymMatrix scaled(double s) const { return SymMatrix(s * data_); }

  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("SymMatrix: dims differ");
    return SymMatrix(a.data_ + b.data_);
  }

  bool operator==(const SymMatrix& other) const {
    return dim() == other.dim() && data_ == other.data_;
  }

 private:
  Eigen::MatrixXd data_;
};

// Lower-triangular L with L L^T = m. Rejects pivots at or below
// dim * eps * max|diag|, which keeps the test scale invariant.
inline Eigen::MatrixXd cholesky_spd(const SymMatrix& m) {
  const int d = m.dim();
  const Eigen::MatrixXd& a = m.matrix();
  const double max_diag = a.diagonal().cwiseAbs().maxCoeff();
  const double threshold = d * std::numeric_limits<double>::epsilon() * max_diag;

  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    double pivot = a(j, j);
    for (int k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > threshold)) {
      throw NotPositiveDefinite("cholesky_spd: pivot " + std::to_string(j) +
                                " is not positive");
    }
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (int i = j + 1; i < d; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

struct DetInverse {
  double determinant;
  double log_determinant;
  SymMatrix inverse;
};

inline DetInverse det_and_inverse_spd(const SymMatrix& m) {
  const Eigen::MatrixXd l = cholesky_spd(m);
  const int d = m.dim();
  double log_det = 0.0;
  for (int i = 0; i < d; ++i) log_det += 2.0 * std::log(l(i, i));

  const Eigen::MatrixXd l_inv =
      l.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(d, d));
  const Eigen::MatrixXd inv = l_inv.transpose() * l_inv;
  return {std::exp(log_det), log_det, SymMatrix(0.5 * (inv + inv.transpose()))};
}

inline double log_det_spd(const SymMatrix& m) {
  const Eigen::MatrixXd l = cholesky_spd(m);
  double log_det = 0.0;
  for (int i = 0; i < m.dim(); ++i) log_det += 2.0 * std::log(l(i, i));
  return log_det;
}

struct SymEigen {
  Vector values;           // ascending
  Eigen::MatrixXd vectors; // columns are eigenvectors
};

inline SymEigen symmetric_eigen(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.matrix());
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// Moore-Penrose inverse of a symmetric matrix. Eigenvalues with
// |lambda| <= rel_tol * max|lambda| are treated as zero.
inline SymMatrix pseudo_inverse_sym(const SymMatrix& m, double rel_tol = 1e-10) {
  if (!(rel_tol > 0.0)) throw DomainError("pseudo_inverse_sym: rel_tol must be > 0");
  const SymEigen eig = symmetric_eigen(m);
  const double cutoff = rel_tol * eig.values.cwiseAbs().maxCoeff();
  Vector inv_values(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double v = eig.values(i);
    inv_values(i) = std::abs(v) > cutoff ? 1.0 / v : 0.0;
  }
  const Eigen::MatrixXd p =
      eig.vectors * inv_values.asDiagonal() * eig.vectors.transpose();
  return SymMatrix(0.5 * (p + p.transpose()));
}

// Quadratic form v^T m^{-1} v through the Cholesky factor.
inline double inverse_quadratic_form(const Eigen::MatrixXd& chol_lower, const Vector& v) {
  const Vector y = chol_lower.triangularView<Eigen::Lower>().solve(v);
  return y.squaredNorm();
}

}  // namespace bayeserr::linalg
