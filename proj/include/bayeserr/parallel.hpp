#pragma once

// Deterministic sharded reduction of a per-draw statistic. Draw k belongs to
// shard k / kShardSize and shard i consumes the stream derived as
// mix(seed, i), so the result depends only on (seed, n), never on the
// number of worker threads. Shards are merged in index order.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

#include "bayeserr/linalg.hpp"
#include "bayeserr/random.hpp"

namespace bayeserr {

inline constexpr std::size_t kShardSize = 4096;

// Running mean / M2 (Welford), mergeable with Chan's formula.
struct RunningStats {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const RunningStats& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(n + o.n);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.n) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }

  double sample_variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double std_error() const {
    return n > 1 ? std::sqrt(sample_variance() / static_cast<double>(n)) : 0.0;
  }
};

// statistic(RandomStream&, Vector& scratch) -> double, called once per draw.
template <class Statistic>
RunningStats run_sharded(std::size_t n, std::uint64_t seed, const Statistic& statistic,
                         unsigned max_workers = 0) {
  const std::size_t shards = (n + kShardSize - 1) / kShardSize;
  std::vector<RunningStats> partial(shards);
  const RandomStream root(seed);

  auto run_shard = [&](std::size_t i) {
    RandomStream rng = root.derive(i);
    linalg::Vector scratch;
    const std::size_t begin = i * kShardSize;
    const std::size_t end = std::min(n, begin + kShardSize);
    RunningStats s;
    for (std::size_t k = begin; k < end; ++k) s.add(statistic(rng, scratch));
    partial[i] = s;
  };

  unsigned workers = max_workers != 0 ? max_workers : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(shards, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < shards; ++i) run_shard(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < shards; i = next++) run_shard(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  RunningStats total;
  for (const auto& s : partial) total.merge(s);
  return total;
}

}  // namespace bayeserr
