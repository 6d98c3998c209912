#ifndef XCHG_MP_RATIONAL_HPP
#define XCHG_MP_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "xchg/error.hpp"

namespace xchg::mp {

/// Arbitrary-size integer.
using Integer = mpz_class;

/// Exact rational, always kept in lowest terms with a positive denominator.
/// gmpxx canonicalizes after every arithmetic operation; values built from
/// a raw numerator/denominator pair must go through make_rational.
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Rational pow(const Rational& x, unsigned long n) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), n);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), n);
  r.canonicalize();
  return r;
}

inline std::string numerator_string(const Rational& q) { return q.get_num().get_str(); }
inline std::string denominator_string(const Rational& q) { return q.get_den().get_str(); }

}  // namespace xchg::mp

#endif  // XCHG_MP_RATIONAL_HPP
