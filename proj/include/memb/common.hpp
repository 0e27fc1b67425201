#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace memb {

// Groups larger than this are refused by table-wide computations
// (subgroup enumeration, character tables, regular-module decomposition).
inline constexpr int kEnumerationBound = 200;

// Hard cap on constructible group orders (7! covers every shipped family).
inline constexpr long long kMaxGroupOrder = 5040;

// Exact-search limit for the maximum independent subset.
inline constexpr int kGammaExactLimit = 64;

namespace tol {
inline constexpr double cert = 1e-8;       // certification residuals
inline constexpr double int_round = 1e-6;  // distance allowed when rounding to integers
inline constexpr double unit = 1e-9;       // unit-norm slack
inline constexpr double spectral = 1e-9;   // Cayley gap margin
inline constexpr double match = 1e-6;      // trace matching against character rows
}  // namespace tol

// Smallest b >= 0 with 2^b >= x (x >= 1).
inline int ceil_log2(std::uint64_t x) {
  int b = 0;
  std::uint64_t v = 1;
  while (v < x) {
    v <<= 1;
    ++b;
  }
  return b;
}

// Raised when an exhaustive computation is requested above the desk-scale
// bound; callers may fall back to sampled plans.
struct enumeration_bound_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace memb
