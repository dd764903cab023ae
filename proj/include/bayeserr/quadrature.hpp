#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration over the real line and
// the plane. The variable is recentred and rescaled first so the bulk of the
// integrand sits near the origin, then (-inf, inf) is mapped onto (-1, 1) by
// x = t / (1 - t^2). Bisection always splits the interval with the largest
// error estimate and stops once the total error is below
// max(abs_tol, rel_tol * |value|).

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <string>

#include "bayeserr/error.hpp"

namespace bayeserr {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  std::size_t max_intervals = 2000;
};

struct QuadratureResult {
  double value;
  double error;
};

namespace detail {

struct GkPanel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const GkPanel& other) const { return error < other.error; }
};

template <class F>
GkPanel gk15_panel(F& f, double a, double b) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using Gauss = boost::math::quadrature::gauss<double, 7>;
  const auto& x = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double kronrod = f0 * wk[0];
  double gauss = f0 * wg[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double sum = f(mid - half * x[i]) + f(mid + half * x[i]);
    kronrod += sum * wk[i];
    if (i % 2 == 0) gauss += sum * wg[i / 2];
  }
  return {a, b, kronrod * half, std::abs(kronrod - gauss) * half};
}

template <class F>
QuadratureResult adaptive_gk15(F& f, double a, double b, const QuadratureConfig& cfg,
                               const char* who) {
  std::priority_queue<GkPanel> panels;
  const GkPanel first = gk15_panel(f, a, b);
  double value = first.value;
  double error = first.error;
  panels.push(first);
  auto target = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value)); };
  while (error > target() && panels.size() < cfg.max_intervals) {
    const GkPanel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const GkPanel left = gk15_panel(f, worst.a, mid);
    const GkPanel right = gk15_panel(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum the surviving panels to shed the rounding of the running updates.
  value = 0.0;
  error = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  if (!std::isfinite(value) || error > 10.0 * target()) {
    throw IntegrationFailure(std::string(who) + ": tolerance not met (error " +
                             std::to_string(error) + ")");
  }
  return {value, error};
}

}  // namespace detail

// Integral of f over (-inf, inf) with x = center + scale * t / (1 - t^2).
template <class F>
QuadratureResult integrate_line(F&& f, double center, double scale,
                                const QuadratureConfig& cfg = {}) {
  auto g = [&](double t) {
    const double q = 1.0 - t * t;
    const double v = f(center + scale * t / q);
    return std::isfinite(v) ? v * scale * (1.0 + t * t) / (q * q) : 0.0;
  };
  return detail::adaptive_gk15(g, -1.0, 1.0, cfg, "integrate_line");
}

// Finite interval [a, b].
template <class F>
QuadratureResult integrate_interval(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
  return detail::adaptive_gk15(f, a, b, cfg, "integrate_interval");
}

// Integral of f(x, y) over the plane by nested line integrals; the inner
// integrals run one decade tighter than the outer one.
template <class F>
QuadratureResult integrate_plane(F&& f, double cx, double cy, double sx, double sy,
                                 const QuadratureConfig& cfg = {}) {
  QuadratureConfig inner = cfg;
  inner.rel_tol = cfg.rel_tol * 0.1;
  inner.abs_tol = cfg.abs_tol * 0.1;
  auto row = [&](double x) {
    return integrate_line([&](double y) { return f(x, y); }, cy, sy, inner).value;
  };
  return integrate_line(row, cx, sx, cfg);
}

}  // namespace bayeserr
