// Test-side oracles, independent of the library's evaluation paths.
#pragma once

#include <cstdint>
#include <functional>

namespace oracles {

// H_n summed smallest-term-first in extended precision.
inline double harmonic(std::uint64_t n) {
  long double sum = 0.0L;
  for (std::uint64_t k = n; k >= 1; --k) sum += 1.0L / static_cast<long double>(k);
  return static_cast<double>(sum);
}

// Partial Basel sum, smallest-term-first.
inline double basel_partial(std::uint64_t n) {
  long double sum = 0.0L;
  for (std::uint64_t k = n; k >= 1; --k) {
    long double t = static_cast<long double>(k);
    sum += 1.0L / (t * t);
  }
  return static_cast<double>(sum);
}

// Bracketed bisection for a strictly decreasing f with f(lo) > 0 > f(hi).
inline double bisect_decreasing(const std::function<double(double)>& f, double lo,
                                double hi, int steps = 200) {
  for (int i = 0; i < steps; ++i) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracles
