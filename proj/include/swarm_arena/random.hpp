// Deterministic, platform-independent random number generation.
//
// Results must be reproducible bit-for-bit across platforms and runs, so the
// generators are spelled out here instead of relying on <random> distributions
// (whose algorithms are implementation-defined). The engine is xoshiro256**
// seeded through a splitmix64 stream; both are the published reference
// algorithms of Blackman & Vigna.

#ifndef SWARM_ARENA_RANDOM_HPP
#define SWARM_ARENA_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace swarm_arena {

// splitmix64 finalizer. Also used by the harness to derive per-trial seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// xoshiro256** with a splitmix64-expanded seed. One instance per trial; the
// stream layout below (uniform01, uniform, below, normal01) is part of the
// reproducibility contract.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& word : state_) {
      sm += 0x9E3779B97F4A7C15ULL;
      std::uint64_t z = sm;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      word = z ^ (z >> 31);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) noexcept {
    return lo + uniform01() * (hi - lo);
  }

  // Uniform integer in [0, n). n must be nonzero. The modulo bias is below
  // n / 2^64 and irrelevant at the population sizes used here.
  std::size_t below(std::size_t n) noexcept {
    return static_cast<std::size_t>(next_u64() % n);
  }

  // Standard normal via Box-Muller; consumes exactly two uniforms per call.
  double normal01() noexcept {
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace swarm_arena

#endif  // SWARM_ARENA_RANDOM_HPP
