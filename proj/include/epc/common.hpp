#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace epc {

using index_t = std::size_t;

// Distances live in [0, inf]; inf marks unreachable pairs and absorbs addition.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Absolute tolerance for every comparison between computed distances.
inline constexpr double kEps = 1e-9;

inline bool is_finite_dist(double x) { return x < kInf; }

// a == b up to tolerance; two infinities compare equal.
inline bool approx_eq(double a, double b) {
  if (a == b) return true;
  return std::abs(a - b) <= kEps;
}

// a <= b up to tolerance.
inline bool approx_le(double a, double b) { return a <= b + kEps; }

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input could not be read or violates a format/domain rule.
struct ParseError : Error {
  using Error::Error;
};

// Mutually inconsistent or out-of-range configuration.
struct ConfigError : Error {
  using Error::Error;
};

// A combinatorial enumeration hit its configured cap.
struct EnumerationLimit : Error {
  using Error::Error;
};

// Fewer finite-distance candidates than a requested neighborhood size.
struct InsufficientPoints : Error {
  using Error::Error;
};

}  // namespace epc
