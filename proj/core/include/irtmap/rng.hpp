#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace irtmap {

// SplitMix64 (Steele, Lea & Flood 2014). Chosen as the project-wide generator
// because the full state transition fits in three lines and can be
// re-implemented from this comment alone:
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
//
// The seed is the initial state, used as-is.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, bound) via next() % bound. The modulo bias is
  // below 2^-32 for every bound used here and keeps the mapping trivially
  // reproducible.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
    return next() % bound;
  }

  // Uniform double in [0, 1): top 53 bits scaled by 2^-53.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Standard normal via the basic Box-Muller transform; draws two uniforms
  // per pair and caches the second value.
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = next_unit();
    double u2 = next_unit();
    while (u1 <= 0.0) u1 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// First k entries of a Fisher-Yates partial shuffle over {0, ..., n-1},
// returned sorted ascending. For i in [0, k): j = i + next_below(n - i),
// swap indices i and j; the prefix of length k is the sample.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                    std::uint64_t seed);

}  // namespace irtmap
