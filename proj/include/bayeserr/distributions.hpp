#pragma once

// The class-conditional families: univariate Gaussian, zero-centred Cauchy
// scale family, multivariate Gaussian, and the centred elliptical Pearson
// type VII and multivariate t families. All values are immutable once
// constructed; normalising constants and Cholesky factors are cached.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "bayeserr/error.hpp"
#include "bayeserr/linalg.hpp"
#include "bayeserr/random.hpp"
#include "bayeserr/special.hpp"

namespace bayeserr {

using linalg::SymMatrix;
using linalg::Vector;

class UnivariateGaussian {
 public:
  UnivariateGaussian(double mu, double sigma) : mu_(mu), sigma_(sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mu)) {
      throw DomainError("UnivariateGaussian: need finite mu and sigma > 0");
    }
  }

  double mu() const { return mu_; }
  double sigma() const { return sigma_; }

  double log_pdf(double x) const {
    const double z = (x - mu_) / sigma_;
    return -0.5 * z * z - std::log(sigma_) - 0.5 * std::log(2.0 * std::numbers::pi);
  }
  double cdf(double x) const { return normal_cdf(x, mu_, sigma_); }
  double sample(RandomStream& rng) const { return mu_ + sigma_ * rng.normal(); }

  bool operator==(const UnivariateGaussian&) const = default;

 private:
  double mu_;
  double sigma_;
};

// p(x; s) = s / (pi (x^2 + s^2)), location fixed at 0.
class CauchyScale {
 public:
  explicit CauchyScale(double s) : s_(s) {
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("CauchyScale: need s > 0");
  }

  double s() const { return s_; }

  double log_pdf(double x) const {
    const double u = x / s_;
    return -std::log(std::numbers::pi * s_) - std::log1p(u * u);
  }
  double cdf(double x) const { return std::atan(x / s_) / std::numbers::pi + 0.5; }
  double sample(RandomStream& rng) const {
    return s_ * std::tan(std::numbers::pi * (rng.uniform() - 0.5));
  }

  bool operator==(const CauchyScale&) const = default;

 private:
  double s_;
};

class MultivariateGaussian {
 public:
  MultivariateGaussian(Vector mu, SymMatrix sigma)
      : mu_(std::move(mu)), sigma_(std::move(sigma)), chol_(linalg::cholesky_spd(sigma_)) {
    if (mu_.size() != sigma_.dim()) {
      throw DimensionMismatch("MultivariateGaussian: mean and covariance dims differ");
    }
    double log_det = 0.0;
    for (int i = 0; i < dim(); ++i) log_det += 2.0 * std::log(chol_(i, i));
    log_norm_ = -0.5 * dim() * std::log(2.0 * std::numbers::pi) - 0.5 * log_det;
  }

  int dim() const { return sigma_.dim(); }
  const Vector& mu() const { return mu_; }
  const SymMatrix& sigma() const { return sigma_; }

  double log_pdf(const Vector& x) const {
    return log_norm_ - 0.5 * linalg::inverse_quadratic_form(chol_, x - mu_);
  }

  void sample_into(RandomStream& rng, Vector& out) const {
    Vector z(dim());
    for (int i = 0; i < dim(); ++i) z(i) = rng.normal();
    out = mu_ + chol_.triangularView<Eigen::Lower>() * z;
  }

  bool operator==(const MultivariateGaussian& o) const {
    return mu_ == o.mu_ && sigma_ == o.sigma_;
  }

 private:
  Vector mu_;
  SymMatrix sigma_;
  Eigen::MatrixXd chol_;
  double log_norm_;
};

// p(x; Sigma) = c_d(lambda) |Sigma|^{-1/2} (1 + x^T Sigma^{-1} x)^{-lambda},
// c_d(lambda) = pi^{-d/2} Gamma(lambda) / Gamma(lambda - d/2).
class PearsonVII {
 public:
  PearsonVII(double lambda, SymMatrix sigma)
      : lambda_(lambda), sigma_(std::move(sigma)), chol_(linalg::cholesky_spd(sigma_)) {
    if (!(lambda > 0.5 * dim()) || !std::isfinite(lambda)) {
      throw DomainError("PearsonVII: need lambda > d/2");
    }
    log_det_ = 0.0;
    for (int i = 0; i < dim(); ++i) log_det_ += 2.0 * std::log(chol_(i, i));
    log_norm_ = -0.5 * dim() * std::log(std::numbers::pi) + log_gamma(lambda_) -
                log_gamma(lambda_ - 0.5 * dim()) - 0.5 * log_det_;
  }

  int dim() const { return sigma_.dim(); }
  double lambda() const { return lambda_; }
  const SymMatrix& sigma() const { return sigma_; }
  double log_det_sigma() const { return log_det_; }
  // Degrees of freedom of the equivalent multivariate t, 2 lambda - d.
  double equivalent_dof() const { return 2.0 * lambda_ - dim(); }

  double log_pdf(const Vector& x) const {
    return log_norm_ - lambda_ * std::log1p(linalg::inverse_quadratic_form(chol_, x));
  }

  // A Pearson VII(lambda, Sigma) variate is an MVT(nu, Sigma/nu) variate with
  // nu = 2 lambda - d, i.e. L z / sqrt(W) with W ~ chi^2(nu).
  void sample_into(RandomStream& rng, Vector& out) const {
    Vector z(dim());
    for (int i = 0; i < dim(); ++i) z(i) = rng.normal();
    const double w = rng.chi_squared(equivalent_dof());
    out = (chol_.triangularView<Eigen::Lower>() * z) / std::sqrt(w);
  }

  bool operator==(const PearsonVII& o) const {
    return lambda_ == o.lambda_ && sigma_ == o.sigma_;
  }

 private:
  double lambda_;
  SymMatrix sigma_;
  Eigen::MatrixXd chol_;
  double log_det_ = 0.0;
  double log_norm_ = 0.0;
};

// Centred multivariate t with nu degrees of freedom and scale matrix Sigma;
// covariance is nu / (nu - 2) Sigma for nu > 2.
class MultivariateT {
 public:
  MultivariateT(double nu, SymMatrix sigma)
      : nu_(nu), sigma_(std::move(sigma)), chol_(linalg::cholesky_spd(sigma_)) {
    if (!(nu >= 1.0) || !std::isfinite(nu)) throw DomainError("MultivariateT: need nu >= 1");
    log_det_ = 0.0;
    for (int i = 0; i < dim(); ++i) log_det_ += 2.0 * std::log(chol_(i, i));
    const double d = dim();
    log_norm_ = log_gamma(0.5 * (nu_ + d)) - log_gamma(0.5 * nu_) -
                0.5 * d * std::log(nu_ * std::numbers::pi) - 0.5 * log_det_;
  }

  int dim() const { return sigma_.dim(); }
  double nu() const { return nu_; }
  const SymMatrix& sigma() const { return sigma_; }
  double log_det_sigma() const { return log_det_; }
  // Exponent of the density kernel, t = -(nu + d) / 2.
  double t() const { return -0.5 * (nu_ + dim()); }

  double log_pdf(const Vector& x) const {
    const double q = linalg::inverse_quadratic_form(chol_, x);
    return log_norm_ + t() * std::log1p(q / nu_);
  }

  void sample_into(RandomStream& rng, Vector& out) const {
    Vector z(dim());
    for (int i = 0; i < dim(); ++i) z(i) = rng.normal();
    const double w = rng.chi_squared(nu_);
    out = (chol_.triangularView<Eigen::Lower>() * z) * std::sqrt(nu_ / w);
  }

  bool operator==(const MultivariateT& o) const {
    return nu_ == o.nu_ && sigma_ == o.sigma_;
  }

 private:
  double nu_;
  SymMatrix sigma_;
  Eigen::MatrixXd chol_;
  double log_det_ = 0.0;
  double log_norm_ = 0.0;
};

using Distribution =
    std::variant<UnivariateGaussian, CauchyScale, MultivariateGaussian, PearsonVII, MultivariateT>;

template <class T>
inline constexpr bool is_univariate_v =
    std::is_same_v<T, UnivariateGaussian> || std::is_same_v<T, CauchyScale>;

inline int dim(const Distribution& dist) {
  return std::visit(
      [](const auto& d) -> int {
        if constexpr (is_univariate_v<std::decay_t<decltype(d)>>) {
          return 1;
        } else {
          return d.dim();
        }
      },
      dist);
}

inline bool is_univariate(const Distribution& dist) {
  return std::holds_alternative<UnivariateGaussian>(dist) ||
         std::holds_alternative<CauchyScale>(dist);
}

inline std::string family_name(const Distribution& dist) {
  static constexpr const char* names[] = {"gaussian1d", "cauchy", "mvn", "pearson7", "mvt"};
  return names[dist.index()];
}

inline double log_pdf(const Distribution& dist, const Vector& x) {
  if (x.size() != dim(dist)) throw DimensionMismatch("log_pdf: point dimension mismatch");
  return std::visit(
      [&x](const auto& d) -> double {
        if constexpr (is_univariate_v<std::decay_t<decltype(d)>>) {
          return d.log_pdf(x(0));
        } else {
          return d.log_pdf(x);
        }
      },
      dist);
}

inline double log_pdf(const Distribution& dist, double x) {
  if (dim(dist) != 1) throw DimensionMismatch("log_pdf: scalar point for a multivariate family");
  return std::visit(
      [x](const auto& d) -> double {
        if constexpr (is_univariate_v<std::decay_t<decltype(d)>>) {
          return d.log_pdf(x);
        } else {
          return d.log_pdf(linalg::make_vector({x}));
        }
      },
      dist);
}

inline double pdf(const Distribution& dist, const Vector& x) { return std::exp(log_pdf(dist, x)); }
inline double pdf(const Distribution& dist, double x) { return std::exp(log_pdf(dist, x)); }

inline double cdf(const Distribution& dist, double x) {
  return std::visit(
      [x](const auto& d) -> double {
        if constexpr (is_univariate_v<std::decay_t<decltype(d)>>) {
          return d.cdf(x);
        } else {
          throw Unsupported("cdf: only defined for univariate families");
        }
      },
      dist);
}

// One draw into `out` (resized to the distribution dimension).
inline void sample_into(const Distribution& dist, RandomStream& rng, Vector& out) {
  std::visit(
      [&](const auto& d) {
        if constexpr (is_univariate_v<std::decay_t<decltype(d)>>) {
          out.resize(1);
          out(0) = d.sample(rng);
        } else {
          d.sample_into(rng, out);
        }
      },
      dist);
}

inline std::vector<Vector> sample(const Distribution& dist, RandomStream& rng, std::size_t n) {
  if (n < 1) throw DomainError("sample: n must be >= 1");
  std::vector<Vector> out(n);
  for (auto& x : out) sample_into(dist, rng, x);
  return out;
}

}  // namespace bayeserr
