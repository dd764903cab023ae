#pragma once

// Affinity coefficients rho_alpha^f = int M_f(p1, p2; alpha) dx and the
// probability-of-error upper bounds they induce:
//   - geometric mean, Gaussian pairs (exponential-family Chernoff coefficient)
//   - harmonic mean, Cauchy scale pairs
//   - power mean f(x) = x^{-1/lambda}, Pearson type VII pairs
//   - power mean f(x) = x^{1/t}, t = -(nu + d)/2, multivariate t pairs
// plus the Chernoff exponent search and a numeric evaluator for any pair.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <type_traits>
#include <utility>
#include <vector>

#include "bayeserr/distributions.hpp"
#include "bayeserr/error.hpp"
#include "bayeserr/estimate.hpp"
#include "bayeserr/linalg.hpp"
#include "bayeserr/means.hpp"
#include "bayeserr/optimize.hpp"
#include "bayeserr/parallel.hpp"
#include "bayeserr/quadrature.hpp"

namespace bayeserr {

struct AffinityResult {
  double alpha;
  double rho;
  double pe_bound;
};

struct ChernoffResult {
  double alpha_star;
  double rho_star;
  double pe_bound;
  double divergence;  // -log(rho_star)
};

struct Priors {
  double w1 = 0.5;
  double w2 = 0.5;
};

namespace detail {

inline void check_unit_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
}

// Shared algebra of the Pearson VII and MVT bounds. With k_i = |S_i|^{1/(2 lam)},
// k = alpha k_1 + (1 - alpha) k_2 and
// S_alpha^{-1} = (alpha k_1 S_1^{-1} + (1 - alpha) k_2 S_2^{-1}) / k,
// the affinity is k^{-lam} |S_alpha|^{1/2}.
inline double elliptical_power_log_affinity(const SymMatrix& s1, double log_det1,
                                            const SymMatrix& s2, double log_det2,
                                            double lam, double alpha) {
  if (alpha == 1.0 || alpha == 0.0) return 0.0;
  const double lk1 = log_det1 / (2.0 * lam);
  const double lk2 = log_det2 / (2.0 * lam);
  const double log_k = log_add_exp(std::log(alpha) + lk1, std::log1p(-alpha) + lk2);
  const double c1 = std::exp(std::log(alpha) + lk1 - log_k);
  const double c2 = std::exp(std::log1p(-alpha) + lk2 - log_k);
  const auto inv1 = linalg::det_and_inverse_spd(s1).inverse;
  const auto inv2 = linalg::det_and_inverse_spd(s2).inverse;
  const SymMatrix precision(c1 * inv1.matrix() + c2 * inv2.matrix());
  const double log_det_precision = linalg::log_det_spd(precision);
  return -lam * log_k - 0.5 * log_det_precision;
}

}  // namespace detail

// Chernoff alpha-coefficient int p1^alpha p2^(1-alpha) dx for Gaussians:
//   |S1|^{(1-a)/2} |S2|^{a/2} / |S_a|^{1/2} exp(-a(1-a)/2 dmu^T S_a^{-1} dmu),
// S_a = (1-a) S1 + a S2. pe_bound = w1^a w2^(1-a) rho.
inline AffinityResult rho_alpha_mvn(const MultivariateGaussian& g1, const MultivariateGaussian& g2,
                                    double alpha, Priors priors = {}) {
  detail::check_unit_alpha(alpha);
  if (g1.dim() != g2.dim()) throw DimensionMismatch("rho_alpha_mvn: dimensions differ");
  double log_rho = 0.0;
  if (alpha > 0.0 && alpha < 1.0) {
    const SymMatrix mixed((1.0 - alpha) * g1.sigma().matrix() + alpha * g2.sigma().matrix());
    const Eigen::MatrixXd l = linalg::cholesky_spd(mixed);
    double log_det_mixed = 0.0;
    for (int i = 0; i < mixed.dim(); ++i) log_det_mixed += 2.0 * std::log(l(i, i));
    const Vector dmu = g2.mu() - g1.mu();
    log_rho = 0.5 * (1.0 - alpha) * linalg::log_det_spd(g1.sigma()) +
              0.5 * alpha * linalg::log_det_spd(g2.sigma()) - 0.5 * log_det_mixed -
              0.5 * alpha * (1.0 - alpha) * linalg::inverse_quadratic_form(l, dmu);
  }
  const double rho = std::exp(log_rho);
  const double prior_factor = std::pow(priors.w1, alpha) * std::pow(priors.w2, 1.0 - alpha);
  return {alpha, rho, prior_factor * rho};
}

inline MultivariateGaussian as_mvn(const UnivariateGaussian& g) {
  return MultivariateGaussian(linalg::make_vector({g.mu()}),
                              SymMatrix::scaled_identity(1, g.sigma() * g.sigma()));
}

inline AffinityResult rho_alpha_mvn(const UnivariateGaussian& g1, const UnivariateGaussian& g2,
                                    double alpha, Priors priors = {}) {
  return rho_alpha_mvn(as_mvn(g1), as_mvn(g2), alpha, priors);
}

// Skew Jensen divergence of a convex log-normaliser F:
//   alpha F(t1) + (1 - alpha) F(t2) - F(alpha t1 + (1 - alpha) t2).
// exp(-J) is the Chernoff alpha-coefficient of two members of the family.
template <class LogNormalizer>
double jensen_skew_divergence(LogNormalizer&& log_normalizer, const Vector& theta1,
                              const Vector& theta2, double alpha) {
  detail::check_unit_alpha(alpha);
  if (theta1.size() != theta2.size()) {
    throw DimensionMismatch("jensen_skew_divergence: parameter dims differ");
  }
  const Vector mixed = alpha * theta1 + (1.0 - alpha) * theta2;
  const double f_mixed = log_normalizer(mixed);
  if (!std::isfinite(f_mixed)) {
    throw DomainError("jensen_skew_divergence: mixed parameter left the domain of F");
  }
  const double j = alpha * log_normalizer(theta1) + (1.0 - alpha) * log_normalizer(theta2) - f_mixed;
  // Round-off can leave a tiny negative gap for identical parameters.
  return j < 0.0 && j > -1e-12 ? 0.0 : j;
}

// Scale of the Cauchy density that the weighted harmonic mean of two Cauchy
// densities is proportional to.
inline double cauchy_scale_alpha(double s1, double s2, double alpha) {
  if (!(s1 > 0.0) || !(s2 > 0.0)) throw DomainError("cauchy_scale_alpha: scales must be > 0");
  detail::check_unit_alpha(alpha);
  const double num = (1.0 - alpha) * s1 * s2 * s2 + alpha * s2 * s1 * s1;
  const double den = (1.0 - alpha) * s1 + alpha * s2;
  return std::sqrt(num / den);
}

// Harmonic-mean bound for equal priors, with lambda = s2 / s1:
//   Pe <= (1/2) lambda / sqrt((1 - a + a lambda)((1 - a) lambda^2 + a lambda)).
inline AffinityResult cauchy_pe_bound(double s1, double s2, double alpha) {
  if (!(s1 > 0.0) || !(s2 > 0.0)) throw DomainError("cauchy_pe_bound: scales must be > 0");
  detail::check_unit_alpha(alpha);
  const double lam = s2 / s1;
  const double pe =
      0.5 * lam / std::sqrt((1.0 - alpha + alpha * lam) * ((1.0 - alpha) * lam * lam + alpha * lam));
  return {alpha, 2.0 * pe, pe};
}

// Power-mean bound (f(x) = x^{-1/lambda}) for a Pearson VII pair, equal priors.
inline AffinityResult pearson7_pe_bound(const PearsonVII& p1, const PearsonVII& p2, double alpha) {
  detail::check_unit_alpha(alpha);
  if (p1.dim() != p2.dim() || p1.lambda() != p2.lambda()) {
    throw MismatchedFamily("pearson7_pe_bound: d and lambda must agree");
  }
  const double rho = std::exp(detail::elliptical_power_log_affinity(
      p1.sigma(), p1.log_det_sigma(), p2.sigma(), p2.log_det_sigma(), p1.lambda(), alpha));
  return {alpha, rho, 0.5 * rho};
}

// The Sigma_alpha of the Pearson VII bound.
inline SymMatrix pearson7_sigma_alpha(const PearsonVII& p1, const PearsonVII& p2, double alpha) {
  detail::check_unit_alpha(alpha);
  if (p1.dim() != p2.dim() || p1.lambda() != p2.lambda()) {
    throw MismatchedFamily("pearson7_sigma_alpha: d and lambda must agree");
  }
  const double lam = p1.lambda();
  const double k1 = alpha * std::exp(p1.log_det_sigma() / (2.0 * lam));
  const double k2 = (1.0 - alpha) * std::exp(p2.log_det_sigma() / (2.0 * lam));
  const auto inv1 = linalg::det_and_inverse_spd(p1.sigma()).inverse;
  const auto inv2 = linalg::det_and_inverse_spd(p2.sigma()).inverse;
  const SymMatrix precision((k1 * inv1.matrix() + k2 * inv2.matrix()) / (k1 + k2));
  return linalg::det_and_inverse_spd(precision).inverse;
}

// rho_alpha^MVT = (a |S1|^{-1/(2t)} + (1-a) |S2|^{-1/(2t)})^t |S'_a|^{1/2},
// t = -(nu + d)/2; the equal-prior bound is rho / 2.
inline AffinityResult mvt_rho_alpha(const MultivariateT& p1, const MultivariateT& p2, double alpha) {
  detail::check_unit_alpha(alpha);
  if (p1.dim() != p2.dim() || p1.nu() != p2.nu()) {
    throw MismatchedFamily("mvt_rho_alpha: d and nu must agree");
  }
  const double rho = std::exp(detail::elliptical_power_log_affinity(
      p1.sigma(), p1.log_det_sigma(), p2.sigma(), p2.log_det_sigma(), -p1.t(), alpha));
  return {alpha, rho, 0.5 * rho};
}

struct ChernoffOptions {
  std::size_t grid_points = 1001;
  double refine_tol = 1e-8;
};

// Minimises over alpha in [0, 1]: an evenly spaced grid, then golden-section
// search inside the two cells around the best grid point. Ties on the grid
// keep the leftmost point.
//
// `objective(alpha)` returns either an AffinityResult (the bound pe_bound is
// minimised) or a plain affinity value (treated as equal-prior rho).
template <class Objective>
ChernoffResult chernoff_optimize(Objective&& objective, ChernoffOptions options = {}) {
  if (options.grid_points < 3) throw DomainError("chernoff_optimize: need at least 3 grid points");
  if (!(options.refine_tol > 0.0)) throw DomainError("chernoff_optimize: refine_tol must be > 0");

  auto evaluate = [&](double alpha) -> AffinityResult {
    using R = std::decay_t<decltype(objective(alpha))>;
    if constexpr (std::is_same_v<R, AffinityResult>) {
      return objective(alpha);
    } else {
      const double rho = objective(alpha);
      return {alpha, rho, 0.5 * rho};
    }
  };

  const std::size_t last = options.grid_points - 1;
  std::size_t best_i = 0;
  AffinityResult best = evaluate(0.0);
  for (std::size_t i = 1; i <= last; ++i) {
    const double alpha = static_cast<double>(i) / static_cast<double>(last);
    const AffinityResult r = evaluate(alpha);
    if (r.pe_bound < best.pe_bound) {
      best = r;
      best_i = i;
    }
  }

  const double lo = static_cast<double>(best_i == 0 ? 0 : best_i - 1) / static_cast<double>(last);
  const double hi = static_cast<double>(best_i == last ? last : best_i + 1) / static_cast<double>(last);
  const ScalarMinimum refined = golden_section_minimize(
      [&](double a) { return evaluate(a).pe_bound; }, lo, hi, options.refine_tol);
  if (refined.value < best.pe_bound) best = evaluate(refined.x);

  return {best.alpha, best.rho, best.pe_bound, -std::log(best.rho)};
}

struct NumericConfig {
  QuadratureConfig quadrature{};
  QuadratureConfig plane{1e-8, 1e-12};  // d == 2
  std::size_t mc_samples = 200000;  // d > 2 only
  std::uint64_t seed = 0;
};

namespace detail {

struct LocationShape {
  Vector center;
  Eigen::MatrixXd shape;
};

inline LocationShape location_shape(const Distribution& dist) {
  return std::visit(
      [](const auto& d) -> LocationShape {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, UnivariateGaussian>) {
          return {linalg::make_vector({d.mu()}), Eigen::MatrixXd::Constant(1, 1, d.sigma() * d.sigma())};
        } else if constexpr (std::is_same_v<T, CauchyScale>) {
          return {linalg::make_vector({0.0}), Eigen::MatrixXd::Constant(1, 1, d.s() * d.s())};
        } else {
          Vector center = Vector::Zero(d.dim());
          if constexpr (std::is_same_v<T, MultivariateGaussian>) center = d.mu();
          return {center, d.sigma().matrix()};
        }
      },
      dist);
}

}  // namespace detail

// Numeric int M_f(w1 p1(x), w2 p2(x); alpha) dx. Adaptive quadrature for
// d <= 2; for d > 2, importance sampling from (p1 + p2) / 2.
inline Estimate rho_numeric(const Distribution& p1, const Distribution& p2, double w1, double w2,
                            const MeanGenerator& g, double alpha, const NumericConfig& cfg = {}) {
  detail::check_unit_alpha(alpha);
  if (!(w1 > 0.0) || !(w2 > 0.0)) throw DomainError("rho_numeric: weights must be > 0");
  const int d = dim(p1);
  if (d != dim(p2)) throw DimensionMismatch("rho_numeric: dimensions differ");
  const double lw1 = std::log(w1);
  const double lw2 = std::log(w2);

  if (d <= 2) {
    const auto ls1 = detail::location_shape(p1);
    const auto ls2 = detail::location_shape(p2);
    const Vector center = 0.5 * (ls1.center + ls2.center);
    const Eigen::MatrixXd root = linalg::cholesky_spd(SymMatrix(0.5 * (ls1.shape + ls2.shape)));
    double value = 0.0;
    if (d == 1) {
      auto integrand = [&](double x) {
        return std::exp(log_weighted_mean(g, lw1 + log_pdf(p1, x), lw2 + log_pdf(p2, x), alpha));
      };
      value = integrate_line(integrand, center(0), std::sqrt(std::max(ls1.shape(0, 0), ls2.shape(0, 0))),
                             cfg.quadrature)
                  .value;
    } else {
      // x = center + root * (u, v)
      Vector x(2);
      auto integrand = [&](double u, double v) {
        x(0) = center(0) + root(0, 0) * u;
        x(1) = center(1) + root(1, 0) * u + root(1, 1) * v;
        return std::exp(log_weighted_mean(g, lw1 + log_pdf(p1, x), lw2 + log_pdf(p2, x), alpha));
      };
      value = root(0, 0) * root(1, 1) * integrate_plane(integrand, 0.0, 0.0, 1.0, 1.0, cfg.plane).value;
    }
    return Estimate::from(value, 0.0, 0, cfg.seed);
  }

  if (cfg.mc_samples < 2) throw DomainError("rho_numeric: need at least 2 samples");
  const double log_half = std::log(0.5);
  auto statistic = [&](RandomStream& rng, Vector& x) {
    sample_into(rng.uniform() < 0.5 ? p1 : p2, rng, x);
    const double l1 = log_pdf(p1, x);
    const double l2 = log_pdf(p2, x);
    const double log_q = log_half + log_add_exp(l1, l2);
    return std::exp(log_weighted_mean(g, lw1 + l1, lw2 + l2, alpha) - log_q);
  };
  const RunningStats stats = run_sharded(cfg.mc_samples, cfg.seed, statistic);
  return Estimate::from(stats.mean, stats.std_error(), stats.n, cfg.seed);
}

}  // namespace bayeserr
