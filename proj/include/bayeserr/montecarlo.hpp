#pragma once

// Stochastic estimates of total variation and probability of error for
// pairs without a closed form. Every density ratio is formed in log space.
//
// estimate_tv samples from its first argument, exactly like
//   TV_hat = 1/(2n) sum |1 - p2(x_i)/p1(x_i)|,  x_i ~ p1.
// Swapping the arguments leaves the limit unchanged but not the variance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "bayeserr/distributions.hpp"
#include "bayeserr/error.hpp"
#include "bayeserr/estimate.hpp"
#include "bayeserr/parallel.hpp"

namespace bayeserr {

namespace detail {

// exp clamps here instead of overflowing to inf.
inline constexpr double kMaxLogRatio = 700.0;

inline void check_pair(const Distribution& p1, const Distribution& p2, std::size_t n) {
  if (dim(p1) != dim(p2)) throw DimensionMismatch("Monte Carlo: dimensions differ");
  if (n < 2) throw DomainError("Monte Carlo: need n >= 2");
}

}  // namespace detail

// The draws estimate_tv uses for (dist, n, seed): shard i of size kShardSize
// comes from the stream derived for index i, so the first m draws for any
// n >= m are the same.
inline std::vector<Vector> sharded_samples(const Distribution& dist, std::size_t n,
                                           std::uint64_t seed) {
  std::vector<Vector> out(n);
  const RandomStream root(seed);
  for (std::size_t begin = 0, shard = 0; begin < n; begin += kShardSize, ++shard) {
    RandomStream rng = root.derive(shard);
    const std::size_t end = std::min(n, begin + kShardSize);
    for (std::size_t k = begin; k < end; ++k) sample_into(dist, rng, out[k]);
  }
  return out;
}

inline Estimate estimate_tv(const Distribution& p1, const Distribution& p2, std::size_t n,
                            std::uint64_t seed) {
  detail::check_pair(p1, p2, n);
  auto statistic = [&](RandomStream& rng, Vector& x) {
    sample_into(p1, rng, x);
    const double log_ratio = std::min(log_pdf(p2, x) - log_pdf(p1, x), detail::kMaxLogRatio);
    return 0.5 * std::abs(1.0 - std::exp(log_ratio));
  };
  const RunningStats stats = run_sharded(n, seed, statistic);
  return Estimate::from(stats.mean, stats.std_error(), n, seed);
}

enum class PeMethod {
  // int min(w1 p1, w2 p2) dx with proposal w1 p1 + w2 p2; the per-draw
  // statistic min/(sum) lies in [0, 1/2].
  MixtureMinimum,
  // 1/2 - TV(w1 p1, w2 p2) with draws from p1; for equal priors this is
  // (1 - TV_hat)/2.
  TotalVariation,
};

inline Estimate estimate_pe(const Distribution& p1, const Distribution& p2, double w1, double w2,
                            std::size_t n, std::uint64_t seed,
                            PeMethod method = PeMethod::MixtureMinimum) {
  detail::check_pair(p1, p2, n);
  if (!(w1 > 0.0) || !(w2 > 0.0) || std::abs(w1 + w2 - 1.0) > 1e-12) {
    throw DomainError("estimate_pe: priors must be positive and sum to 1");
  }
  const double lw1 = std::log(w1);
  const double lw2 = std::log(w2);

  if (method == PeMethod::TotalVariation) {
    auto statistic = [&](RandomStream& rng, Vector& x) {
      sample_into(p1, rng, x);
      const double log_ratio = std::min(log_pdf(p2, x) - log_pdf(p1, x), detail::kMaxLogRatio);
      return 0.5 - 0.5 * std::abs(w1 - w2 * std::exp(log_ratio));
    };
    const RunningStats stats = run_sharded(n, seed, statistic);
    return Estimate::from(stats.mean, stats.std_error(), n, seed);
  }

  auto statistic = [&](RandomStream& rng, Vector& x) {
    sample_into(rng.uniform() < w1 ? p1 : p2, rng, x);
    const double gap = std::abs((lw1 + log_pdf(p1, x)) - (lw2 + log_pdf(p2, x)));
    // min(A, B) / (A + B) = 1 / (1 + exp(|log A - log B|))
    return 1.0 / (1.0 + std::exp(std::min(gap, detail::kMaxLogRatio)));
  };
  const RunningStats stats = run_sharded(n, seed, statistic);
  return Estimate::from(stats.mean, stats.std_error(), n, seed);
}

// estimate_tv at each n of an increasing list; smaller samples are prefixes
// of larger ones.
inline std::vector<std::pair<std::size_t, Estimate>> convergence_table(
    const Distribution& p1, const Distribution& p2, const std::vector<std::size_t>& n_list,
    std::uint64_t seed) {
  if (n_list.empty()) throw DomainError("convergence_table: empty n list");
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) throw DomainError("convergence_table: n list must increase");
  }
  std::vector<std::pair<std::size_t, Estimate>> rows;
  rows.reserve(n_list.size());
  for (std::size_t n : n_list) rows.emplace_back(n, estimate_tv(p1, p2, n, seed));
  return rows;
}

}  // namespace bayeserr
