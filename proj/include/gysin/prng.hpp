#pragma once

#include <cstdint>

namespace gysin {

/// Fixed, documented PRNG (SplitMix64) so that generated corpora are
/// bit-reproducible across platforms and implementations. The derived
/// helpers below are part of the reproducibility contract; see the file
/// format documentation.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform-ish value in [0, n); defined as next() % n.
  uint64_t below(uint64_t n) { return next() % n; }

  /// Value in [lo, hi], inclusive.
  long range(long lo, long hi) {
    return lo + long(below(uint64_t(hi - lo + 1)));
  }

  bool chance(unsigned num, unsigned den) { return below(den) < num; }
};

}  // namespace gysin
