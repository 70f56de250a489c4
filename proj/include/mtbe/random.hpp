#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mtbe {

/// SplitMix64 finalizer. Bijective on 64-bit words.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Derives the seed for one simulation run from a base seed, a run index and
/// a retry counter. The key packs run and attempt into one word, so the map
/// is injective for attempt < 2^20 and run < 2^44; results depend only on
/// the three arguments, never on worker count or scheduling.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t run,
                                 std::uint64_t attempt = 0) {
  return splitmix64(splitmix64(base) ^ ((run << 20) | (attempt & 0xFFFFF)));
}

/// Deterministic random source. All draws go through explicit inverse-CDF
/// formulas on top of mt19937_64 so that streams are reproducible bit for
/// bit for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform draw strictly inside (0, 1).
  double uniform_open01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Exponential draw with the given mean, strictly positive and finite.
  double exponential(double mean) {
    return -mean * std::log1p(-uniform_open01());
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mtbe
