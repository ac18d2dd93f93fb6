#pragma once

#include <cstdint>

namespace cmap {

// Deterministic cross-platform generator (splitmix64).  Every sampling path
// in the library derives one of these from an explicit seed so that reports
// are byte-stable for a given seed on any host.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n), n >= 1, unbiased via rejection.
  std::uint64_t bounded(std::uint64_t n) {
    std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t x = next();
      if (x >= threshold) return x % n;
    }
  }
};

}  // namespace cmap
