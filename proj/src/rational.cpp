#include "invar/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace invar {

Rat::Rat(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
  cache_parts();
}

Rat::Rat(const mpz_class& num, const mpz_class& den) {
  if (sgn(den) == 0) throw std::domain_error("rational with zero denominator");
  q_ = mpq_class(num) / mpq_class(den);
  cache_parts();
}

Rat::Rat(mpq_class q) : q_(std::move(q)) {
  q_.canonicalize();
  cache_parts();
}

Rat Rat::parse(std::string_view text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      mpz_class n(std::string(text), 10);
      return Rat(mpq_class(n));
    }
    mpz_class n(std::string(text.substr(0, slash)), 10);
    mpz_class d(std::string(text.substr(slash + 1)), 10);
    if (sgn(d) == 0) throw std::invalid_argument("zero denominator");
    return Rat(n, d);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
}

std::string Rat::str() const {
  if (den_ == 1) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

std::size_t Rat::bit_complexity() const {
  mpz_class a = abs(num_);
  std::size_t nbits = mpz_sizeinbase(a.get_mpz_t(), 2);
  std::size_t dbits = mpz_sizeinbase(den_.get_mpz_t(), 2);
  return nbits + dbits - 1;
}

Rat Rat::operator/(const Rat& o) const {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  return Rat(mpq_class(q_ / o.q_));
}

Rat Rat::pow(unsigned e) const {
  Rat acc(1);
  Rat base = *this;
  while (e != 0) {
    if (e & 1u) acc *= base;
    base *= base;
    e >>= 1u;
  }
  return acc;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace invar
