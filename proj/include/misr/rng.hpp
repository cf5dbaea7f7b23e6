// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

namespace misr::rng {

// SplitMix64 engine (Vigna 2015). Satisfies UniformRandomBitGenerator so the
// <random> distributions can run on top of it.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform draw in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Unit-mean exponential draw.
  double exponential() { return -std::log1p(-uniform01()); }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Named substream derived from (master seed, realization index, role).
// The derivation is a pure function, so a realization draws the same numbers
// no matter which worker executes it or in what order.
inline SplitMix64 substream(std::uint64_t master, std::uint64_t index,
                            std::uint64_t role) {
  std::uint64_t s = mix64(master ^ (0x9e3779b97f4a7c15ull * (index + 1)));
  s = mix64(s + 0xd1b54a32d192ed03ull * (role + 1));
  return SplitMix64{s};
}

}  // namespace misr::rng
