#pragma once

#include <cstdint>
#include <initializer_list>

namespace grouplog {

// Deterministic splittable generator (splitmix64 core). Suites derive one
// stream per (seed, suite id, sample index) so sample order and parallelism
// cannot change results.
class Rng {
 public:
  explicit Rng(std::uint64_t state) : state_(state) {}

  static Rng derive(std::initializer_list<std::uint64_t> keys) {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::uint64_t k : keys) h = mix(h ^ mix(k));
    return Rng(h);
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Uniform in [0, bound), bound > 0. Multiply-shift; bias is far below
  // anything observable at desk scale and the scheme is platform-stable.
  std::uint64_t below(std::uint64_t bound) {
    return (std::uint64_t)(((unsigned __int128)next() * bound) >> 64);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t state_;
};

}  // namespace grouplog
