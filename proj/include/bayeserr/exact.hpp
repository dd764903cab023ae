#pragma once

// Exact Bayes error through the total-variation identity
//   B_e = (a1 + a2)/2 - TV(a1 p1, a2 p2),  a1 = w1 (c11 + c21), a2 = w2 (c12 + c22),
// with TV of univariate pairs computed segmentwise between the crossing
// points of the scaled densities.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <type_traits>
#include <vector>

#include "bayeserr/distributions.hpp"
#include "bayeserr/error.hpp"
#include "bayeserr/linalg.hpp"
#include "bayeserr/optimize.hpp"
#include "bayeserr/special.hpp"

namespace bayeserr {

// c_ij is the cost of deciding class i when the sample belongs to class j.
struct CostModel {
  double c11 = 0.0;
  double c12 = 1.0;
  double c21 = 1.0;
  double c22 = 0.0;
  double w1 = 0.5;
  double w2 = 0.5;

  static CostModel probability_of_error(double w1 = 0.5, double w2 = 0.5) {
    return {0.0, 1.0, 1.0, 0.0, w1, w2};
  }

  void validate() const {
    if (!(w1 > 0.0) || !(w2 > 0.0) || std::abs(w1 + w2 - 1.0) > 1e-12) {
      throw DomainError("CostModel: priors must be positive and sum to 1");
    }
    if (w1 * (c11 + c21) < 0.0 || w2 * (c12 + c22) < 0.0) {
      throw DomainError("CostModel: derived weights must be nonnegative");
    }
  }
};

struct ScaledWeights {
  double a1;
  double a2;
};

inline ScaledWeights derived_weights(const CostModel& cm) {
  cm.validate();
  return {cm.w1 * (cm.c11 + cm.c21), cm.w2 * (cm.c12 + cm.c22)};
}

// B_e = (a1 + a2)/2 - TV(a1 p1, a2 p2). For the probability-of-error model
// this is P_e = 1/2 - TV(w1 p1, w2 p2).
inline double bayes_error(const CostModel& cm, double tv_scaled) {
  const auto [a1, a2] = derived_weights(cm);
  return 0.5 * (a1 + a2) - tv_scaled;
}

// Sorted crossing abscissae of a1 p1 = a2 p2 plus the support endpoints.
struct CrossingSet {
  std::vector<double> roots;
  double support_min = -std::numeric_limits<double>::infinity();
  double support_max = std::numeric_limits<double>::infinity();
};

// Roots of ((x-mu1)/s1)^2 - ((x-mu2)/s2)^2 - 2 log(a1 s2 / (a2 s1)) = 0.
inline CrossingSet gaussian_crossings(double a1, const UnivariateGaussian& g1, double a2,
                                      const UnivariateGaussian& g2) {
  if (!(a1 > 0.0) || !(a2 > 0.0)) throw DomainError("gaussian_crossings: weights must be > 0");
  const double m1 = g1.mu(), s1 = g1.sigma();
  const double m2 = g2.mu(), s2 = g2.sigma();
  const double log_ratio = std::log(a1 * s2 / (a2 * s1));

  if (s1 == s2) {
    if (m1 == m2) {
      if (a1 == a2) throw DegenerateInput("gaussian_crossings: identical scaled densities");
      throw NoCrossing("gaussian_crossings: same shape, different mass");
    }
    const double x = (m1 * m1 - m2 * m2 - 2.0 * s1 * s1 * log_ratio) / (2.0 * (m1 - m2));
    return {{x}};
  }

  const double qa = 1.0 / (s1 * s1) - 1.0 / (s2 * s2);
  const double qb = 2.0 * (m2 / (s2 * s2) - m1 / (s1 * s1));
  const double qc = (m1 * m1) / (s1 * s1) - (m2 * m2) / (s2 * s2) - 2.0 * log_ratio;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (!(disc > 0.0)) throw NoCrossing("gaussian_crossings: one scaled density dominates");

  const double root_disc = std::sqrt(disc);
  double x1, x2;
  if (qb == 0.0) {
    x1 = -root_disc / (2.0 * qa);
    x2 = root_disc / (2.0 * qa);
  } else {
    // Citardauq form avoids cancellation in -b + sqrt(disc).
    const double q = -0.5 * (qb + std::copysign(root_disc, qb));
    x1 = q / qa;
    x2 = qc / q;
  }
  if (x1 > x2) std::swap(x1, x2);
  return {{x1, x2}};
}

// x = -/+ sqrt(s1 s2 (a2 s1 - a1 s2) / (a1 s1 - a2 s2)).
inline CrossingSet cauchy_crossings(double a1, double s1, double a2, double s2) {
  if (!(a1 > 0.0) || !(a2 > 0.0) || !(s1 > 0.0) || !(s2 > 0.0)) {
    throw DomainError("cauchy_crossings: weights and scales must be > 0");
  }
  if (s1 == s2 && a1 == a2) throw DegenerateInput("cauchy_crossings: identical scaled densities");
  const double ratio = s1 * s2 * (a2 * s1 - a1 * s2) / (a1 * s1 - a2 * s2);
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw NoCrossing("cauchy_crossings: one scaled density dominates");
  }
  const double x = std::sqrt(ratio);
  return {{-x, x}};
}

// TV(a1 p1, a2 p2) = 1/2 sum_i |int_{x_{i-1}}^{x_i} (a1 p1 - a2 p2) dx| using CDFs.
inline double tv_univariate(double a1, const Distribution& p1, double a2, const Distribution& p2,
                            const CrossingSet& crossings) {
  if (!is_univariate(p1) || !is_univariate(p2)) {
    throw Unsupported("tv_univariate: needs univariate families");
  }
  auto mass = [&](double x) -> double {
    if (x == -INFINITY) return 0.0;
    if (x == INFINITY) return a1 - a2;
    return a1 * cdf(p1, x) - a2 * cdf(p2, x);
  };
  double prev = mass(crossings.support_min);
  double total = 0.0;
  for (double x : crossings.roots) {
    const double cur = mass(x);
    total += std::abs(cur - prev);
    prev = cur;
  }
  total += std::abs(mass(crossings.support_max) - prev);
  return 0.5 * total;
}

// TV(p1, p2) for Cauchy scales s1, s2 (symmetric, scale invariant).
inline double cauchy_tv(double s1, double s2) {
  if (!(s1 > 0.0) || !(s2 > 0.0)) throw DomainError("cauchy_tv: scales must be > 0");
  return std::abs(2.0 / std::numbers::pi *
                  (std::atan(std::sqrt(s2 / s1)) - std::atan(std::sqrt(s1 / s2))));
}

// Equal-prior P_e = 1 - (2/pi) arctan(sqrt(lambda)), lambda = s2/s1. Class
// swapping leaves P_e unchanged, so lambda < 1 is folded to 1/lambda.
inline double cauchy_pe(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("cauchy_pe: lambda must be > 0");
  const double l = std::max(lambda, 1.0 / lambda);
  return 1.0 - 2.0 / std::numbers::pi * std::atan(std::sqrt(l));
}

// Gap between the Bhattacharyya (= Chernoff) bound and the exact P_e:
//   sqrt(l)/(1 + l) - 1 + (2/pi) arctan(sqrt(l)).
inline double cauchy_gap(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("cauchy_gap: lambda must be > 0");
  const double l = std::max(lambda, 1.0 / lambda);
  return std::sqrt(l) / (1.0 + l) - 1.0 + 2.0 / std::numbers::pi * std::atan(std::sqrt(l));
}

struct GapMaximum {
  double lambda;
  double gap;
};

inline GapMaximum cauchy_gap_maximizer(double lo = 1.0, double hi = 100.0, double tol = 1e-10) {
  const ScalarMinimum m = golden_section_minimize([](double l) { return -cauchy_gap(l); }, lo, hi, tol);
  return {m.x, -m.value};
}

// Equal-prior P_e of two Gaussians sharing a (possibly singular) covariance:
//   1/2 - 1/2 erf(|| (S^+)^{1/2} (mu2 - mu1) || / (2 sqrt 2)).
inline double mvn_equal_cov_pe(const Vector& mu1, const Vector& mu2, const SymMatrix& sigma,
                               double rel_tol = 1e-10) {
  if (mu1.size() != sigma.dim() || mu2.size() != sigma.dim()) {
    throw DimensionMismatch("mvn_equal_cov_pe: dimension mismatch");
  }
  const linalg::SymEigen eig = linalg::symmetric_eigen(sigma);
  const double cutoff = rel_tol * eig.values.cwiseAbs().maxCoeff();
  Vector root_inv(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double v = eig.values(i);
    if (v < -cutoff) throw NotPositiveDefinite("mvn_equal_cov_pe: covariance is indefinite");
    root_inv(i) = v > cutoff ? 1.0 / std::sqrt(v) : 0.0;
  }
  const Eigen::MatrixXd pinv_root = eig.vectors * root_inv.asDiagonal() * eig.vectors.transpose();
  const double dist = (pinv_root * (mu2 - mu1)).norm();
  return 0.5 * std::erfc(dist / (2.0 * std::numbers::sqrt2));
}

// TV(a1 p1, a2 p2) for a same-family univariate pair (Gaussian or Cauchy).
// A pair that never crosses contributes |a1 - a2| / 2.
inline double exact_tv(double a1, const Distribution& p1, double a2, const Distribution& p2) {
  if (a1 == 0.0 || a2 == 0.0) return 0.5 * (a1 + a2);
  CrossingSet crossings;
  try {
    if (const auto* g1 = std::get_if<UnivariateGaussian>(&p1)) {
      const auto* g2 = std::get_if<UnivariateGaussian>(&p2);
      if (g2 == nullptr) throw Unsupported("exact_tv: mixed families");
      crossings = gaussian_crossings(a1, *g1, a2, *g2);
    } else if (const auto* c1 = std::get_if<CauchyScale>(&p1)) {
      const auto* c2 = std::get_if<CauchyScale>(&p2);
      if (c2 == nullptr) throw Unsupported("exact_tv: mixed families");
      crossings = cauchy_crossings(a1, c1->s(), a2, c2->s());
    } else {
      throw Unsupported("exact_tv: no exact path for family " + family_name(p1));
    }
  } catch (const NoCrossing&) {
    return 0.5 * std::abs(a1 - a2);
  } catch (const DegenerateInput&) {
    return 0.5 * std::abs(a1 - a2);
  }
  return tv_univariate(a1, p1, a2, p2, crossings);
}

struct ExactResult {
  double tv;           // TV(p1, p2) of the unit-mass pair
  double tv_scaled;    // TV(a1 p1, a2 p2)
  double bayes_error;  // (a1 + a2)/2 - tv_scaled
  double prob_error;   // 1/2 - TV(w1 p1, w2 p2)
};

namespace detail {

inline const MultivariateGaussian* as_mvn_ptr(const Distribution& d) {
  return std::get_if<MultivariateGaussian>(&d);
}

inline Distribution univariate_from_mvn(const MultivariateGaussian& g) {
  return UnivariateGaussian(g.mu()(0), std::sqrt(g.sigma()(0, 0)));
}

}  // namespace detail

// Dispatch for the pairs with an exact path: univariate Gaussian or Cauchy
// pairs under any cost model, and equal-covariance Gaussian pairs under equal
// priors and the probability-of-error cost model.
inline ExactResult exact_bayes_error(const CostModel& cm, const Distribution& p1,
                                     const Distribution& p2) {
  const auto [a1, a2] = derived_weights(cm);
  const auto* m1 = detail::as_mvn_ptr(p1);
  const auto* m2 = detail::as_mvn_ptr(p2);
  if (m1 != nullptr && m2 != nullptr) {
    if (m1->dim() != m2->dim()) throw DimensionMismatch("exact_bayes_error: dimensions differ");
    if (m1->dim() == 1) {
      return exact_bayes_error(cm, detail::univariate_from_mvn(*m1), detail::univariate_from_mvn(*m2));
    }
    if (!(m1->sigma() == m2->sigma())) {
      throw Unsupported("exact_bayes_error: Gaussian pairs need equal covariances when d > 1");
    }
    if (cm.w1 != cm.w2 || cm.c11 != 0.0 || cm.c22 != 0.0 || cm.c12 != 1.0 || cm.c21 != 1.0) {
      throw Unsupported("exact_bayes_error: equal-covariance formula needs equal priors and 0/1 costs");
    }
    const double pe = mvn_equal_cov_pe(m1->mu(), m2->mu(), m1->sigma());
    const double tv_half = 0.5 - pe;  // TV(p1/2, p2/2)
    return {2.0 * tv_half, tv_half, pe, pe};
  }
  if (!is_univariate(p1) || !is_univariate(p2)) {
    throw Unsupported("exact_bayes_error: no exact path for " + family_name(p1) + " / " +
                      family_name(p2) + "; use the Monte Carlo estimator");
  }
  const double tv_unit = exact_tv(1.0, p1, 1.0, p2);
  const double tv_scaled = exact_tv(a1, p1, a2, p2);
  const double tv_priors = exact_tv(cm.w1, p1, cm.w2, p2);
  return {tv_unit, tv_scaled, 0.5 * (a1 + a2) - tv_scaled, 0.5 - tv_priors};
}

}  // namespace bayeserr
