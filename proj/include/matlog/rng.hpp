#pragma once

#include <cstdint>
#include <random>

#include "matlog/types.hpp"

namespace matlog {

// Deterministic random stream. Uniform doubles are derived from raw 64-bit
// words directly (not through std::uniform_real_distribution) so that the
// sequence is identical across standard-library implementations; trial
// streams are independent functions of (seed, trial) so parallel scheduling
// can never change a report.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t trial) {
    // splitmix64 over the pair
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static Rng for_trial(std::uint64_t seed, std::uint64_t trial) {
    return Rng(mix(seed, trial));
  }

  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  long uniform_int(long lo, long hi) {  // inclusive bounds
    return lo + static_cast<long>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Complex unit_square() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace matlog
