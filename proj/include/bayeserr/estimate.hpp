#pragma once

#include <cstddef>
#include <cstdint>

namespace bayeserr {

// A numeric estimate with its sampling uncertainty. Quadrature results use
// n = 0 and std_error = 0.
struct Estimate {
  double value = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;

  static Estimate from(double value, double std_error, std::size_t n, std::uint64_t seed) {
    return {value, n, seed, std_error, value - 1.96 * std_error, value + 1.96 * std_error};
  }
};

}  // namespace bayeserr
