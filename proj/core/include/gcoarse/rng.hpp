#pragma once

#include <cstddef>
#include <cstdint>

namespace gcoarse {

/// SplitMix64 (Steele, Lea & Flood). Fully specified integer arithmetic, so
/// a given seed produces the same stream on every platform.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform double in [0, 1) built from the top 53 bits.
  constexpr double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). bound must be positive.
  constexpr std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) {
        return r % bound;
      }
    }
  }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Independent generator for sub-stream `stream` of a run seeded with
/// `seed`: SplitMix64(mix(seed ^ mix(stream + 1))). Used for the k-th
/// contraction step, the i-th Monte-Carlo trial and each pipeline stage.
constexpr SplitMix64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64(SplitMix64::mix(seed ^ SplitMix64::mix(stream + 1)));
}

/// Fisher-Yates shuffle driven by `rng`.
template <class RandomIt>
void shuffle(RandomIt first, RandomIt last, SplitMix64& rng) {
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    const std::uint64_t j = rng.next_below(i);
    using std::swap;
    swap(first[i - 1], first[j]);
  }
}

}  // namespace gcoarse
