#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace varlp {

// splitmix64. Hand-rolled so that per-trial seed splitting and the sampled
// streams are identical no matter which standard library or thread schedule
// runs the trial loop.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : state_(seed) {}

  static RandomSource for_trial(std::uint64_t seed, std::uint64_t trial) {
    RandomSource r(seed + 0x632be59bd9b4e019ULL * (trial + 1));
    r.next_u64();
    r.next_u64();
    return r;
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Uniform integer in [lo, hi], inclusive.
  std::uint64_t index(std::uint64_t lo, std::uint64_t hi) {
    return lo + next_u64() % (hi - lo + 1);
  }

  bool coin(double p = 0.5) { return unit() < p; }

  // Area-uniform on the disk of the given radius, never exactly zero.
  std::complex<double> on_disk(double radius) { return on_annulus(0.0, radius); }

  // Area-uniform on {r_min <= |z| <= r_max}.
  std::complex<double> on_annulus(double r_min, double r_max) {
    for (;;) {
      double r = std::sqrt(uniform(r_min * r_min, r_max * r_max));
      double phi = uniform(0.0, 2.0 * std::numbers::pi);
      std::complex<double> z(r * std::cos(phi), r * std::sin(phi));
      if (z != std::complex<double>(0.0, 0.0)) return z;
    }
  }

  // Re and Im independently uniform in [-half_width, half_width], never zero.
  std::complex<double> in_square(double half_width) {
    for (;;) {
      std::complex<double> z(uniform(-half_width, half_width),
                             uniform(-half_width, half_width));
      if (z != std::complex<double>(0.0, 0.0)) return z;
    }
  }

  std::complex<double> unit_phase() {
    double phi = uniform(0.0, 2.0 * std::numbers::pi);
    return {std::cos(phi), std::sin(phi)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace varlp
