// Deterministic, cross-platform RNG for instance generation.
//
// std::mt19937 itself is portable, but the distributions
// (uniform_int_distribution, uniform_real_distribution) are not pinned by the
// standard and differ between libstdc++ and libc++. Experiment records need
// to be byte-identical for a given seed regardless of toolchain, so we use a
// small SplitMix64 engine with hand-rolled, fully specified draws.
#pragma once

#include <cstdint>

namespace fairalloc {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [lo, hi], inclusive. Rejection sampling keeps the
  // distribution exact and identical across platforms.
  std::uint64_t next_in(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    if (span == 0) return next();  // full range
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return lo + v % span;
  }

  // Uniform double in [0, 1): 53 top bits scaled by 2^-53.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Derive the k-th stream seed from a master seed. Trials within a sweep each
// get their own stream so adding or dropping a trial never perturbs the
// others' draws.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t k) {
  return SplitMix64(master + k * 0x9E3779B97F4A7C15ULL).next();
}

}  // namespace fairalloc
