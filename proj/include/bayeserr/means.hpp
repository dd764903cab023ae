#pragma once

// Weighted quasi-arithmetic (Kolmogorov-Nagumo) means
//   M_f(a, b; alpha) = f^{-1}(alpha f(a) + (1 - alpha) f(b))
// for the arithmetic, geometric, harmonic and power generators.

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "bayeserr/error.hpp"
#include "bayeserr/special.hpp"

namespace bayeserr {

class MeanGenerator {
 public:
  enum class Kind { Arithmetic, Geometric, Harmonic, Power };

  static MeanGenerator arithmetic() { return MeanGenerator(Kind::Arithmetic, 1.0); }
  static MeanGenerator geometric() { return MeanGenerator(Kind::Geometric, 0.0); }
  static MeanGenerator harmonic() { return MeanGenerator(Kind::Harmonic, -1.0); }
  static MeanGenerator power(double p) {
    if (p == 0.0 || !std::isfinite(p)) {
      throw DomainError("MeanGenerator::power: exponent must be finite and nonzero");
    }
    return MeanGenerator(Kind::Power, p);
  }

  Kind kind() const { return kind_; }
  // Exponent p of f(x) = x^p; 0 stands for the geometric (log) generator.
  double exponent() const { return p_; }

  std::string name() const {
    switch (kind_) {
      case Kind::Arithmetic: return "arithmetic";
      case Kind::Geometric: return "geometric";
      case Kind::Harmonic: return "harmonic";
      case Kind::Power: {
        std::ostringstream os;
        os.precision(17);
        os << "power:" << p_;
        return os.str();
      }
    }
    return "unknown";
  }

  double f(double x) const { return p_ == 0.0 ? std::log(x) : std::pow(x, p_); }
  double f_inverse(double y) const { return p_ == 0.0 ? std::exp(y) : std::pow(y, 1.0 / p_); }

  bool operator==(const MeanGenerator&) const = default;

 private:
  MeanGenerator(Kind kind, double p) : kind_(kind), p_(p) {}

  Kind kind_;
  double p_;
};

namespace detail {

// log M_f from log a and log b; alpha is not range checked so finite
// difference stencils may step slightly outside [0, 1].
inline double log_mean_unchecked(const MeanGenerator& g, double log_a, double log_b, double alpha) {
  if (alpha == 1.0) return log_a;
  if (alpha == 0.0) return log_b;
  const double p = g.exponent();
  if (p == 0.0) return alpha * log_a + (1.0 - alpha) * log_b;

  // A zero argument drives the mean to 0 for p < 0 and drops out for p > 0.
  if (log_a == -INFINITY || log_b == -INFINITY) {
    if (p < 0.0) return -INFINITY;
    if (log_a == -INFINITY && log_b == -INFINITY) return -INFINITY;
    if (log_a == -INFINITY) return std::log1p(-alpha) / p + log_b;
    return std::log(alpha) / p + log_a;
  }
  if (alpha > 0.0 && alpha < 1.0) {
    const double t1 = std::log(alpha) + p * log_a;
    const double t2 = std::log1p(-alpha) + p * log_b;
    return log_add_exp(t1, t2) / p;
  }
  // Outside [0, 1]: plain evaluation, only used by difference stencils.
  const double s = alpha * std::exp(p * log_a) + (1.0 - alpha) * std::exp(p * log_b);
  return std::log(s) / p;
}

inline void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
}

}  // namespace detail

// log M_f(a, b; alpha) given log a and log b. Arguments may be -inf (zero density).
inline double log_weighted_mean(const MeanGenerator& g, double log_a, double log_b, double alpha) {
  detail::check_alpha(alpha);
  return detail::log_mean_unchecked(g, log_a, log_b, alpha);
}

inline double weighted_mean(const MeanGenerator& g, double a, double b, double alpha) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("weighted_mean: arguments must be positive");
  detail::check_alpha(alpha);
  if (alpha == 1.0) return a;
  if (alpha == 0.0) return b;
  switch (g.kind()) {
    case MeanGenerator::Kind::Arithmetic: return alpha * a + (1.0 - alpha) * b;
    case MeanGenerator::Kind::Harmonic: return a * b / (alpha * b + (1.0 - alpha) * a);
    default: break;
  }
  const double m = std::exp(detail::log_mean_unchecked(g, std::log(a), std::log(b), alpha));
  // Clamp the last ulp of rounding so interness holds exactly.
  return std::fmin(std::fmax(m, std::fmin(a, b)), std::fmax(a, b));
}

// d^2/d alpha^2 of M_f(a, b; alpha). Closed forms for the geometric and
// harmonic generators, a central (or one-sided near the ends) second
// difference with step 1e-4 otherwise.
inline double second_derivative_alpha(const MeanGenerator& g, double a, double b, double alpha) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("second_derivative_alpha: arguments must be positive");
  }
  detail::check_alpha(alpha);
  switch (g.kind()) {
    case MeanGenerator::Kind::Geometric: {
      const double l = std::log(a / b);
      return l * l * weighted_mean(g, a, b, alpha);
    }
    case MeanGenerator::Kind::Harmonic: {
      const double denom = alpha * (b - a) + a;
      return 2.0 * a * b * (a - b) * (a - b) / (denom * denom * denom);
    }
    case MeanGenerator::Kind::Arithmetic: return 0.0;
    default: break;
  }
  constexpr double h = 1e-4;
  const double la = std::log(a);
  const double lb = std::log(b);
  auto m = [&](double t) { return std::exp(detail::log_mean_unchecked(g, la, lb, t)); };
  if (alpha < h) return (m(alpha) - 2.0 * m(alpha + h) + m(alpha + 2.0 * h)) / (h * h);
  if (alpha > 1.0 - h) return (m(alpha) - 2.0 * m(alpha - h) + m(alpha - 2.0 * h)) / (h * h);
  return (m(alpha + h) - 2.0 * m(alpha) + m(alpha - h)) / (h * h);
}

}  // namespace bayeserr
