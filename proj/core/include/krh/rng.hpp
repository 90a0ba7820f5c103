#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <utility>

namespace krh {

/// Counter-free splittable generator (SplitMix64). One instance per work item
/// keeps results independent of scheduling; the mixing function is fixed so
/// streams are reproducible across platforms and thread counts.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on (0, 1].
  double uniform01() {
    return 1.0 - static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * (1.0 - uniform01()); }

  bool coin() { return (next() & 1ULL) != 0; }

  /// Box-Muller pair of independent N(0,1) variates.
  std::pair<double, double> normal_pair() {
    double u1 = uniform01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(th), r * std::sin(th)};
  }

  double normal() { return normal_pair().first; }

  /// Standard complex Gaussian N_C(0,1): real and imaginary parts N(0, 1/2).
  std::complex<double> complex_gaussian() {
    auto [x, y] = normal_pair();
    constexpr double half = 0.70710678118654752440;  // sqrt(1/2)
    return {half * x, half * y};
  }
};

/// Deterministic per-item stream derived from (seed, index).
inline SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
  g.next();
  return g;
}

}  // namespace krh
