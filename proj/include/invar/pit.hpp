#pragma once

#include <map>
#include <optional>
#include <vector>

#include "invar/circuit.hpp"

namespace invar::pit {

struct PitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Identity-test configuration. The trial count is derived from the error
/// budget: trials = max(1, ceil(log2(1/epsilon))), so each independent trial
/// halves the failure probability at worst.
struct PitConfig {
  Rat epsilon{1, 128};
  std::uint64_t seed = 0;
  unsigned prime_bits = 62;

  unsigned trials() const;
  void check() const;  // epsilon in (0,1), prime_bits in [32, 62]
};

struct PitWitness {
  std::uint64_t prime = 0;
  std::map<std::uint32_t, std::uint64_t> point;  // aux index -> value mod prime
  std::vector<std::uint64_t> values;             // one per circuit output
};

struct PitTrial {
  std::uint64_t prime = 0;
  unsigned prime_resamples = 0;  // bad-prime rejections before this prime stuck
  bool nonzero = false;
};

struct PitResult {
  bool identically_zero = true;
  std::optional<PitWitness> witness;
  std::vector<PitTrial> transcript;
};

/// One-sided randomized identity test for a circuit over the aux variables
/// only (no main-variable gates). The zero polynomial is always reported
/// IdenticallyZero; a nonzero polynomial is reported Nonzero with probability
/// at least 1 - epsilon, with a witness that re-evaluates nonzero.
///
/// Each trial draws, from a per-trial SplitMix64 sub-stream of the seed, a
/// fresh random prime p of the configured bit length and a point whose
/// coordinates are uniform in [0, 2^(s+6)) reduced mod p (s = gate count),
/// then evaluates the circuit mod p. Primes dividing a constant's
/// denominator are resampled a bounded number of times; exhaustion raises
/// PitError rather than guessing.
PitResult pit(const circ::Circuit& c, const PitConfig& cfg);

}  // namespace invar::pit
