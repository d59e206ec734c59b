#pragma once

#include <cstdint>
#include <vector>

#include "posetbal/rational.hpp"

namespace posetbal {

/// SplitMix64: the k-th output is mix(seed + k * 0x9E3779B97F4A7C15), where
/// mix is the Stafford variant-13 finalizer. Being counter based, it is easy
/// to reproduce in any language.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), bound > 0. Rejection keeps it exact.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  /// Uniform big integer in [0, bound), bound > 0.
  Count below(const Count& bound) {
    if (bound.fits_ulong_p()) return count_of(below(static_cast<std::uint64_t>(bound.get_ui())));
    const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    const std::size_t words = (bits + 63) / 64;
    const std::size_t top_bits = bits - 64 * (words - 1);
    const std::uint64_t top_mask = top_bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << top_bits) - 1;
    std::vector<std::uint64_t> limbs(words);
    Count v;
    do {
      for (auto& w : limbs) w = next();
      limbs.back() &= top_mask;
      mpz_import(v.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, limbs.data());
    } while (v >= bound);
    return v;
  }

 private:
  std::uint64_t state_;
};

/// Independent sub-stream for (seed, stream index).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64::mix(seed ^ SplitMix64::mix(stream + SplitMix64::kGamma));
}

}  // namespace posetbal
