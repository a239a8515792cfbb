#pragma once

#include <cstdint>

namespace snakeplan {

// SplitMix64. Small, fast, and fully deterministic across platforms, which the
// suite-level reproducibility contract depends on. Streams are derived by
// mixing a base seed with arbitrary tags, so independent consumers (scenario
// generation, per-plan-call sampling, retries) never share a sequence.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Counter-style stream derivation: hash-combine seed with tags.
  static Rng stream(std::uint64_t seed, std::uint64_t tag0, std::uint64_t tag1 = 0,
                    std::uint64_t tag2 = 0) {
    std::uint64_t s = mix(seed ^ 0x6a09e667f3bcc909ULL);
    s = mix(s ^ tag0);
    s = mix(s ^ tag1);
    s = mix(s ^ tag2);
    return Rng(s);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [0, n).
  std::uint64_t uniform_int(std::uint64_t n) { return n ? next_u64() % n : 0; }

 private:
  std::uint64_t state_;
};

}  // namespace snakeplan
