#include "invar/pit.hpp"

#include <algorithm>

#include "invar/splitmix.hpp"

namespace invar::pit {

namespace {

constexpr unsigned kMaxPrimeResamples = 64;

// Uniform value in [0, 2^bits) reduced mod p, consumed most-significant
// word first (Horner), so the draw matches a single big-integer sample.
std::uint64_t wide_uniform_mod(SplitMix64& rng, std::size_t bits, std::uint64_t p) {
  const std::size_t words = (bits + 63) / 64;
  const unsigned top_bits = static_cast<unsigned>(bits - (words - 1) * 64);
  const std::uint64_t top_mask = top_bits == 64 ? ~0ULL : ((1ULL << top_bits) - 1);
  const std::uint64_t shift = mod::mulmod((1ULL << 32) % p, (1ULL << 32) % p, p);  // 2^64 mod p
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t word = rng.next();
    if (w == 0) word &= top_mask;
    acc = mod::addmod(mod::mulmod(acc, shift, p), word % p, p);
  }
  return acc;
}

}  // namespace

unsigned PitConfig::trials() const {
  check();
  // smallest t with 2^t >= 1/epsilon, i.e. 2^t * num >= den
  unsigned t = 0;
  mpz_class scaled = epsilon.num();
  while (scaled < epsilon.den()) {
    scaled <<= 1;
    ++t;
  }
  return std::max(1u, t);
}

void PitConfig::check() const {
  if (epsilon.sign() <= 0 || epsilon >= Rat(1))
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (prime_bits < 32 || prime_bits > 62)
    throw std::invalid_argument("prime bit-length must lie in [32, 62]");
}

PitResult pit(const circ::Circuit& c, const PitConfig& cfg) {
  cfg.check();
  if (c.has_main_vars())
    throw std::invalid_argument("pit requires a circuit over aux variables only");
  c.validate();

  const std::size_t point_bits = c.size() + 6;
  const unsigned trials = cfg.trials();

  PitResult result;
  for (unsigned trial = 0; trial < trials; ++trial) {
    SplitMix64 rng = derive_rng(cfg.seed, trial);
    PitTrial record;
    std::optional<std::vector<std::uint64_t>> values;
    circ::Assignment<std::uint64_t> assignment;
    std::uint64_t prime = 0;

    for (unsigned attempt = 0;; ++attempt) {
      if (attempt >= kMaxPrimeResamples)
        throw PitError("prime resampling exhausted: every sampled prime divided a denominator");
      prime = mod::random_prime(rng, cfg.prime_bits);
      circ::PrimeField field(prime);
      assignment.aux.clear();
      for (std::uint32_t idx = 0; idx < c.aux_var_count(); ++idx)
        assignment.aux[idx] = wide_uniform_mod(rng, point_bits, prime);
      try {
        values = circ::evaluate(c, field, assignment);
        record.prime_resamples = attempt;
        break;
      } catch (const mod::BadPrimeError&) {
        continue;  // caller-visible via the resample count
      }
    }

    record.prime = prime;
    record.nonzero = std::any_of(values->begin(), values->end(), [](std::uint64_t v) { return v != 0; });
    result.transcript.push_back(record);

    if (record.nonzero) {
      // Certify by a second, independent evaluation at the same point.
      circ::PrimeField field(prime);
      auto again = circ::evaluate(c, field, assignment);
      if (again != *values) throw PitError("witness failed to re-verify");
      result.identically_zero = false;
      result.witness = PitWitness{prime, assignment.aux, *values};
      return result;
    }
  }
  return result;
}

}  // namespace invar::pit
