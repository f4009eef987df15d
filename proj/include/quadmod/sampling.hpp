#pragma once

#include <cmath>
#include <cstdint>

#include "quadmod/complex.hpp"

namespace quadmod {

/// Counter-based generator: the stream for (seed, index) depends on nothing
/// else, so samples can be drawn in any order or in parallel.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t index) noexcept
      : state_(mix(seed ^ mix(index + 0x632be59bd9b4e019ULL))) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform in [0, 1).
  constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform in the open disk |z| < radius.
  Complex in_disk(double radius = 1.0) noexcept {
    const double r = radius * std::sqrt(uniform());
    const double theta = 2.0 * kPi * uniform();
    return std::polar(r, theta);
  }

  /// Uniform in the annulus inner < |z - center| <= outer.
  Complex in_annulus(Complex center, double inner, double outer) noexcept {
    const double u = uniform();
    const double r = std::sqrt(outer * outer - u * (outer * outer - inner * inner));
    return center + std::polar(r, 2.0 * kPi * uniform());
  }

 private:
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace quadmod
