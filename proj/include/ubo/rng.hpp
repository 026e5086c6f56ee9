#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "ubo/mathutil.hpp"

namespace ubo {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Seeded random stream. std::mt19937_64 supplies the bits; uniform/normal
/// conversion is done here rather than through std::*_distribution so that
/// sequences are identical across standard libraries. Every stochastic piece
/// of the library draws from one of these.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    // Modulo bias is below 2^-40 for the n used here (permutation indices).
    return gen_() % n;
  }

  /// Standard normal via Box-Muller; second value of each pair is cached.
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    cached_ = radius * std::sin(2.0 * kPi * u2);
    has_cached_ = true;
    return radius * std::cos(2.0 * kPi * u2);
  }

  /// Independent child stream; deterministic in (seed, tag).
  Rng derive(std::uint64_t tag) const {
    return Rng(splitmix64(seed_ ^ splitmix64(tag + 0x632be59bd9b4e019ull)));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace ubo
