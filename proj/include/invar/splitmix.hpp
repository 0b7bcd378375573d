#pragma once

#include <cstdint>

namespace invar {

/// SplitMix64 generator. All randomized code in the project draws from this
/// so that a (seed, label) pair fully determines every transcript.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform in [lo, hi] inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::uint64_t state_;
};

/// Sub-seed derivation: the master seed is perturbed by the label through one
/// SplitMix64 step. Labelled streams are independent for distinct labels.
inline SplitMix64 derive_rng(std::uint64_t master, std::uint64_t label) {
  SplitMix64 mix(master ^ (0x9e3779b97f4a7c15ULL * (label + 1)));
  return SplitMix64(mix.next());
}

}  // namespace invar
