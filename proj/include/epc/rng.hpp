#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "epc/common.hpp"

namespace epc {

// All randomness in the library and tools goes through these helpers instead
// of std::uniform_*_distribution, whose output is not pinned by the standard
// and differs between libstdc++ and libc++. mt19937_64 itself is fully
// specified, so seeded runs are byte-identical everywhere.
using Rng = std::mt19937_64;

// Uniform integer in [0, n), by rejection.
inline std::uint64_t bounded(Rng& rng, std::uint64_t n) {
  if (n == 0) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Box-Muller; avoids std::normal_distribution for cross-platform determinism.
inline double gaussian(Rng& rng) {
  double u1 = uniform01(rng);
  while (u1 == 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.28318530717958647692 * u2);
}

// k distinct values from [0, n), sorted ascending.
inline std::vector<index_t> sample_without_replacement(Rng& rng, index_t n, index_t k) {
  if (k > n) k = n;
  std::vector<index_t> picked;
  picked.reserve(k);
  // Floyd's algorithm.
  std::vector<bool> taken(n, false);
  for (index_t j = n - k; j < n; ++j) {
    const index_t t = static_cast<index_t>(bounded(rng, j + 1));
    if (!taken[t]) {
      taken[t] = true;
      picked.push_back(t);
    } else {
      taken[j] = true;
      picked.push_back(j);
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace epc
