#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace invar {

/// Exact rational scalar. Always kept in lowest terms with a positive
/// denominator. The bit-complexity metric counts the numerator's bit length
/// plus the denominator's bits beyond its implicit leading one, so plain
/// integers cost exactly their bit length (3 -> 2 bits, 1/2 -> 2 bits).
class Rat {
 public:
  Rat() : q_(0) { cache_parts(); }
  Rat(long v) : q_(v) { cache_parts(); }  // NOLINT: implicit by design, mirrors integer literals
  Rat(long num, long den);
  explicit Rat(const mpz_class& num, const mpz_class& den);
  explicit Rat(mpq_class q);

  /// Parses "num/den" or a bare integer "num". Throws std::invalid_argument
  /// on malformed input or a zero denominator.
  static Rat parse(std::string_view text);

  /// "num/den" when den != 1, otherwise just "num". Decimal-free and exact.
  std::string str() const;

  const mpz_class& num() const { return num_; }
  const mpz_class& den() const { return den_; }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }

  std::size_t bit_complexity() const;

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat operator+(const Rat& o) const { return Rat(mpq_class(q_ + o.q_)); }
  Rat operator-(const Rat& o) const { return Rat(mpq_class(q_ - o.q_)); }
  Rat operator*(const Rat& o) const { return Rat(mpq_class(q_ * o.q_)); }
  Rat operator/(const Rat& o) const;
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  Rat inverse() const { return Rat(1) / *this; }
  Rat pow(unsigned e) const;

  bool operator==(const Rat& o) const { return cmp(q_, o.q_) == 0; }
  std::strong_ordering operator<=>(const Rat& o) const {
    int c = cmp(q_, o.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  void cache_parts() {
    num_ = q_.get_num();
    den_ = q_.get_den();
  }

  mpq_class q_;
  mpz_class num_, den_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace invar
