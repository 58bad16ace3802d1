#pragma once

#include <cstdint>

namespace planestat {

/// SplitMix64: the project's seedable, splittable 64-bit generator.
///
/// Stream-split rule: the stream for logical index i under master seed s is
/// SplitMix64 seeded with mix64(s + i * GOLDEN). Because each stream depends
/// only on (seed, index), results are independent of how indices are
/// distributed across workers.
struct SplitMix64 {
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix64(seed + index * kGolden));
  }

  std::uint64_t next() {
    state += kGolden;
    return mix64(state);
  }

  /// Uniform in [0, n) by rejection; unbiased and deterministic.
  std::uint32_t below(std::uint32_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return static_cast<std::uint32_t>(v % n);
  }
};

}  // namespace planestat
