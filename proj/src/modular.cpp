#include "invar/modular.hpp"

namespace invar::mod {

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t acc = 1 % p;
  base %= p;
  while (exp != 0) {
    if (exp & 1u) acc = mulmod(acc, base, p);
    base = mulmod(base, base, p);
    exp >>= 1u;
  }
  return acc;
}

namespace {

bool miller_rabin(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned r) {
  std::uint64_t x = powmod(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < r; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned r = 0;
  while ((d & 1u) == 0) {
    d >>= 1u;
    ++r;
  }
  // This base set decides primality exactly for every 64-bit integer.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (!miller_rabin(n, a, d, r)) return false;
  }
  return true;
}

std::uint64_t random_prime(SplitMix64& rng, unsigned bits) {
  if (bits < 32 || bits > 62) throw std::invalid_argument("prime bit-length out of range [32, 62]");
  const std::uint64_t top = 1ULL << (bits - 1);
  for (;;) {
    std::uint64_t candidate = top | rng.below(top) | 1ULL;
    if (is_prime(candidate)) return candidate;
  }
}

std::uint64_t reduce(const Rat& q, std::uint64_t p) {
  std::uint64_t den = mpz_fdiv_ui(q.den().get_mpz_t(), p);
  if (den == 0) throw BadPrimeError(p);
  std::uint64_t num = mpz_fdiv_ui(q.num().get_mpz_t(), p);
  return mulmod(num, invmod(den, p), p);
}

}  // namespace invar::mod
