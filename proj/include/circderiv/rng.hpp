#pragma once

#include <cstdint>

namespace circderiv {

/// Identifies one reproducible random stream. Parallel sweeps keep `seed`
/// fixed and vary `stream`.
struct SeedSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
  friend auto operator<=>(const SeedSpec&, const SeedSpec&) = default;
};

/**
 * xoshiro256** (Blackman & Vigna, 2018) keyed by (seed, stream).
 *
 * The four state words are the first four outputs of SplitMix64 started at
 *   key = mix(seed) ^ mix(stream * 0xD1B54A32D192ED03 + 0x8CB92BA72F3D8DD7)
 * where mix is the SplitMix64 finalizer. Only integer arithmetic is used, so
 * a given SeedSpec yields the same sequence on every platform.
 */
class Rng {
 public:
  explicit Rng(SeedSpec spec);

  std::uint64_t next();

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform();

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound), bound > 0 (Lemire's rejection method).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64_mix(std::uint64_t z);

}  // namespace circderiv
