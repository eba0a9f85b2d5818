#pragma once

#include <cstdint>

namespace xz24 {

/// splitmix64: tiny, fast, and identical on every platform. Used for shot
/// sampling and test fixture generation, where run-to-run and cross-machine
/// reproducibility matter more than statistical sophistication.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi], inclusive.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    return lo + next() % (hi - lo + 1);
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent stream seed for a substream (e.g. one time point of
/// a shot-sampled sweep) so results do not depend on worker scheduling.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  SplitMix64 mix(base ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
  return mix.next();
}

}  // namespace xz24
