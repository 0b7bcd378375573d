#pragma once

#include <cstdint>
#include <stdexcept>

#include "invar/rational.hpp"
#include "invar/splitmix.hpp"

namespace invar::mod {

/// Raised when a rational constant cannot be reduced modulo the current
/// prime because its denominator vanishes. Callers resample the prime.
struct BadPrimeError : std::runtime_error {
  explicit BadPrimeError(std::uint64_t p)
      : std::runtime_error("denominator vanishes mod " + std::to_string(p)), prime(p) {}
  std::uint64_t prime;
};

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;  // p < 2^63, no overflow
  return s >= p ? s - p : s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p);

/// Multiplicative inverse mod prime p; a must be nonzero mod p.
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Uniform random prime with exactly `bits` bits (32 <= bits <= 62).
std::uint64_t random_prime(SplitMix64& rng, unsigned bits);

/// Reduces an exact rational mod p. Throws BadPrimeError when p divides the
/// denominator.
std::uint64_t reduce(const Rat& q, std::uint64_t p);

}  // namespace invar::mod
