#ifndef XCHG_MP_REAL_HPP
#define XCHG_MP_REAL_HPP

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdlib>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "xchg/error.hpp"

namespace xchg::mp {

/// Binary precision of a Real, in bits.
struct Precision {
  mpfr_prec_t bits = 64;

  friend constexpr auto operator<=>(Precision, Precision) = default;
};

/// Bits needed to carry `digits` significant decimal digits.
inline Precision precision_for_digits(int digits) {
  const double bits = std::ceil(static_cast<double>(digits) * 3.3219280948873623) + 8.0;
  return Precision{static_cast<mpfr_prec_t>(bits)};
}

/// Requested digits plus the guard margin max(10, 10% of the request).
inline int working_digits(int digits) {
  const int guard = std::max(10, (digits + 9) / 10);
  return digits + guard;
}

inline void require_digits(int digits) {
  if (digits <= 0) {
    throw DomainError("precision request must be at least one digit, got " + std::to_string(digits));
  }
}

/// Precision used internally for a computation that must be good to
/// `digits` significant decimal digits.
inline Precision working_precision(int digits) {
  require_digits(digits);
  return precision_for_digits(working_digits(digits));
}

/// An MPFR floating-point value that owns its precision. Arithmetic between
/// two values is carried out at the larger of the two precisions; arithmetic
/// with built-in integers keeps the precision of the Real operand. No global
/// state is touched, so values may be used freely from several threads.
class Real {
 public:
  Real() : Real(Precision{}) {}

  explicit Real(Precision prec) {
    mpfr_init2(v_, std::max<mpfr_prec_t>(prec.bits, MPFR_PREC_MIN));
    mpfr_set_zero(v_, 1);
  }

  template <std::signed_integral I>
  Real(I x, Precision prec) : Real(prec) {
    mpfr_set_si(v_, static_cast<long>(x), MPFR_RNDN);
  }

  template <std::unsigned_integral I>
  Real(I x, Precision prec) : Real(prec) {
    mpfr_set_ui(v_, static_cast<unsigned long>(x), MPFR_RNDN);
  }

  Real(double x, Precision prec) : Real(prec) { mpfr_set_d(v_, x, MPFR_RNDN); }

  Real(const mpz_class& x, Precision prec) : Real(prec) { mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }

  Real(const mpq_class& x, Precision prec) : Real(prec) { mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }

  /// Parses a decimal literal ("1.5", "-2e-3"). Throws DomainError on junk.
  Real(std::string_view text, Precision prec) : Real(prec) {
    const std::string s(text);
    char* end = nullptr;
    if (mpfr_strtofr(v_, s.c_str(), &end, 10, MPFR_RNDN), end == s.c_str() || *end != '\0') {
      throw DomainError("not a real number: '" + s + "'");
    }
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }

  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }

  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }

  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }

  ~Real() { mpfr_clear(v_); }

  Precision precision() const { return Precision{mpfr_get_prec(v_)}; }

  /// Same value rounded to a different precision.
  Real with_precision(Precision prec) const {
    Real r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  Real operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) { return assign_binary(mpfr_add, o); }
  Real& operator-=(const Real& o) { return assign_binary(mpfr_sub, o); }
  Real& operator*=(const Real& o) { return assign_binary(mpfr_mul, o); }
  Real& operator/=(const Real& o) { return assign_binary(mpfr_div, o); }

  template <std::integral I>
  Real& operator+=(I x) {
    mpfr_add_si(v_, v_, static_cast<long>(x), MPFR_RNDN);
    return *this;
  }
  template <std::integral I>
  Real& operator-=(I x) {
    mpfr_sub_si(v_, v_, static_cast<long>(x), MPFR_RNDN);
    return *this;
  }
  template <std::integral I>
  Real& operator*=(I x) {
    mpfr_mul_si(v_, v_, static_cast<long>(x), MPFR_RNDN);
    return *this;
  }
  template <std::integral I>
  Real& operator/=(I x) {
    mpfr_div_si(v_, v_, static_cast<long>(x), MPFR_RNDN);
    return *this;
  }

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }

  template <std::integral I>
  friend Real operator+(Real a, I b) { return a += b; }
  template <std::integral I>
  friend Real operator+(I a, Real b) { return b += a; }
  template <std::integral I>
  friend Real operator-(Real a, I b) { return a -= b; }
  template <std::integral I>
  friend Real operator-(I a, const Real& b) {
    Real r(b.precision());
    mpfr_si_sub(r.v_, static_cast<long>(a), b.v_, MPFR_RNDN);
    return r;
  }
  template <std::integral I>
  friend Real operator*(Real a, I b) { return a *= b; }
  template <std::integral I>
  friend Real operator*(I a, Real b) { return b *= a; }
  template <std::integral I>
  friend Real operator/(Real a, I b) { return a /= b; }
  template <std::integral I>
  friend Real operator/(I a, const Real& b) {
    Real r(b.precision());
    mpfr_si_div(r.v_, static_cast<long>(a), b.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  template <std::integral I>
  friend bool operator==(const Real& a, I b) {
    return !mpfr_nan_p(a.v_) && mpfr_cmp_si(a.v_, static_cast<long>(b)) == 0;
  }
  template <std::integral I>
  friend std::partial_ordering operator<=>(const Real& a, I b) {
    if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp_si(a.v_, static_cast<long>(b));
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

 private:
  template <class Op>
  Real& assign_binary(Op op, const Real& o) {
    const mpfr_prec_t p = mpfr_get_prec(o.v_);
    if (p > mpfr_get_prec(v_)) mpfr_prec_round(v_, p, MPFR_RNDN);
    op(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  mpfr_t v_;
};

namespace detail {
template <class Fn>
Real unary(const Real& x, Fn fn) {
  Real r(x.precision());
  fn(r.get(), x.get(), MPFR_RNDN);
  return r;
}
}  // namespace detail

inline Real abs(const Real& x) { return detail::unary(x, mpfr_abs); }
inline Real sqrt(const Real& x) { return detail::unary(x, mpfr_sqrt); }
inline Real exp(const Real& x) { return detail::unary(x, mpfr_exp); }
inline Real expm1(const Real& x) { return detail::unary(x, mpfr_expm1); }
inline Real log(const Real& x) { return detail::unary(x, mpfr_log); }
inline Real log1p(const Real& x) { return detail::unary(x, mpfr_log1p); }
inline Real log10(const Real& x) { return detail::unary(x, mpfr_log10); }
inline Real sinh(const Real& x) { return detail::unary(x, mpfr_sinh); }
inline Real cosh(const Real& x) { return detail::unary(x, mpfr_cosh); }

inline Real pow(const Real& x, unsigned long n) {
  Real r(x.precision());
  mpfr_pow_ui(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

inline Real pow(const Real& x, const Real& y) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real min(const Real& a, const Real& b) { return b < a ? b : a; }

/// 10^e at the given precision.
inline Real pow10(long e, Precision prec) {
  Real r(prec);
  Real ten(10, prec);
  mpfr_pow_si(r.get(), ten.get(), e, MPFR_RNDN);
  return r;
}

/// Scientific notation with exactly `digits` significant figures,
/// e.g. to_sci(0.19314718, 3) == "1.93e-01".
inline std::string to_sci(const Real& x, int digits) {
  require_digits(digits);
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, "%.*Re", digits - 1, x.get()) < 0) {
    throw Error("mpfr_asprintf failed");
  }
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const Real& x) {
  const auto digits = static_cast<int>(std::max<long>(
      1, static_cast<long>(static_cast<double>(x.precision().bits) * 0.30102999566398120)));
  return os << to_sci(x, std::min(digits, 40));
}

}  // namespace xchg::mp

#endif  // XCHG_MP_REAL_HPP
