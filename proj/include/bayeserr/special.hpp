#pragma once

#include <cmath>
#include <numbers>

namespace bayeserr {

inline double erf(double x) { return std::erf(x); }

// Phi(x; mu, sigma). Uses erfc in the lower tail to keep relative accuracy.
inline double normal_cdf(double x, double mu = 0.0, double sigma = 1.0) {
  const double z = (x - mu) / (sigma * std::numbers::sqrt2);
  return 0.5 * std::erfc(-z);
}

// Not safe to call concurrently on glibc (writes signgam); callers
// evaluate it once per distribution at construction.
inline double log_gamma(double x) { return std::lgamma(x); }

// log(exp(a) + exp(b)) without overflow.
inline double log_add_exp(double a, double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  const double m = a > b ? a : b;
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

}  // namespace bayeserr
