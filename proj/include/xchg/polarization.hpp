#ifndef XCHG_POLARIZATION_HPP
#define XCHG_POLARIZATION_HPP

// Collinear asymptotics of the polarization functions of H + proton.
//
// Along the internuclear axis the k-th order polarization factor reduces to
// a power series in rho = r_a / R with exact rational coefficients t_n^(k).
// They obey
//
//     t_n^(k) = (1/n) sum_{j=2k-2}^{n-2} t_j^(k-1),   t_n^(0) = delta_{n0},
//
// and are generated by g_k(z) = [-z - ln(1-z)]^k / k!, which also gives the
// closed form of the factor for 0 <= rho < 1. Summed over all orders the
// factors reproduce exp(-rho) / (1 - rho).

#include <string>
#include <vector>

#include "xchg/error.hpp"
#include "xchg/mp/constants.hpp"
#include "xchg/mp/rational.hpp"
#include "xchg/mp/real.hpp"

namespace xchg {

/// t[k][n] for 0 <= k <= k_max, 0 <= n <= n_max.
class RationalCoeffTable {
 public:
  RationalCoeffTable(int k_max, int n_max)
      : k_max_(k_max), n_max_(n_max),
        t_(static_cast<std::size_t>(k_max + 1) * static_cast<std::size_t>(n_max + 1)) {}

  int k_max() const { return k_max_; }
  int n_max() const { return n_max_; }

  const mp::Rational& operator()(int k, int n) const { return t_[index(k, n)]; }
  mp::Rational& operator()(int k, int n) { return t_[index(k, n)]; }

  friend bool operator==(const RationalCoeffTable&, const RationalCoeffTable&) = default;

 private:
  std::size_t index(int k, int n) const {
    if (k < 0 || k > k_max_ || n < 0 || n > n_max_) {
      throw DomainError("coefficient index (" + std::to_string(k) + ", " + std::to_string(n) +
                        ") outside table");
    }
    return static_cast<std::size_t>(k) * static_cast<std::size_t>(n_max_ + 1) +
           static_cast<std::size_t>(n);
  }

  int k_max_;
  int n_max_;
  std::vector<mp::Rational> t_;
};

namespace detail {
inline void require_table_bounds(int k_max, int n_max) {
  if (k_max < 0 || n_max < 0) throw DomainError("table bounds must be nonnegative");
}
}  // namespace detail

/// Coefficient table built from the order recurrence. Rows are sequential in
/// k; each row is one pass with a running sum over j.
inline RationalCoeffTable tcoeffs(int k_max, int n_max) {
  detail::require_table_bounds(k_max, n_max);
  RationalCoeffTable t(k_max, n_max);
  t(0, 0) = 1;
  for (int k = 1; k <= k_max; ++k) {
    const int lower = 2 * k - 2;
    mp::Rational running = 0;
    for (int n = 1; n <= n_max; ++n) {
      if (n - 2 >= lower) running += t(k - 1, n - 2);
      t(k, n) = running / n;
    }
  }
  return t;
}

/// Same table from truncated power-series arithmetic on the generating
/// function [-z - ln(1-z)]^k / k!. Shares no code with tcoeffs.
inline RationalCoeffTable gf_coeffs(int k_max, int n_max) {
  detail::require_table_bounds(k_max, n_max);
  const auto len = static_cast<std::size_t>(n_max + 1);
  std::vector<mp::Rational> base(len);
  for (std::size_t n = 2; n < len; ++n) base[n] = mp::Rational(1, static_cast<unsigned long>(n));

  RationalCoeffTable t(k_max, n_max);
  std::vector<mp::Rational> power(len);
  power[0] = 1;
  for (int k = 0; k <= k_max; ++k) {
    const mp::Rational inv_fact(1, mp::factorial(static_cast<unsigned long>(k)));
    for (int n = 0; n <= n_max; ++n) t(k, n) = power[static_cast<std::size_t>(n)] * inv_fact;
    if (k == k_max) break;
    std::vector<mp::Rational> next(len);
    for (std::size_t i = 0; i < len; ++i) {
      if (power[i] == 0) continue;
      for (std::size_t j = 2; i + j < len; ++j) next[i + j] += power[i] * base[j];
    }
    power = std::move(next);
  }
  return t;
}

/// Coefficient of z^n in [-z - ln(1-z)]^k / k!.
inline mp::Rational gf_coeff(int k, int n) {
  if (k < 0 || n < 0) throw DomainError("gf_coeff: k and n must be nonnegative");
  if (n < 2 * k) return 0;
  return gf_coeffs(k, n)(k, n);
}

/// -x - ln(1 - x) for 0 <= x < 1, without cancellation for small x.
inline mp::Real log_tail(const mp::Real& x) {
  if (x < 0 || !(x < 1)) throw DomainError("log_tail: argument outside [0, 1)");
  const mp::Precision prec = x.precision();
  if (x < mp::Real(0.00390625, prec)) {
    // sum_{n>=2} x^n / n
    mp::Real sum(prec);
    mp::Real power = x * x;
    const mp::Real eps = mp::pow10(-static_cast<long>(static_cast<double>(prec.bits) * 0.30103) - 2, prec);
    for (unsigned long n = 2; !power.is_zero(); ++n) {
      const mp::Real term = power / n;
      sum += term;
      if (term < eps * sum) break;
      power *= x;
    }
    return sum;
  }
  return -x - mp::log1p(-x);
}

namespace detail {
inline mp::Real checked_rho(const mp::Real& rho, int digits) {
  const mp::Precision prec = mp::working_precision(digits);
  if (rho < 0 || !(rho < 1)) {
    throw DomainError("rho = " + mp::to_sci(rho, 6) + " outside [0, 1)");
  }
  return rho.with_precision(std::max(prec, rho.precision()));
}
}  // namespace detail

/// Closed form [-rho - ln(1-rho)]^k / k! of the k-th collinear factor.
inline mp::Real ftilde(int k, const mp::Real& rho, int digits) {
  if (k < 0) throw DomainError("ftilde: order must be nonnegative");
  const mp::Real x = detail::checked_rho(rho, digits);
  const mp::Real g = log_tail(x);
  return mp::pow(g, static_cast<unsigned long>(k)) /
         mp::Real(mp::factorial(static_cast<unsigned long>(k)), x.precision());
}

/// Partial sum of the collinear factors through order K.
inline mp::Real fsum(int K, const mp::Real& rho, int digits) {
  if (K < 0) throw DomainError("fsum: order must be nonnegative");
  const mp::Real x = detail::checked_rho(rho, digits);
  const mp::Real g = log_tail(x);
  mp::Real term(1, x.precision());
  mp::Real sum = term;
  for (int k = 1; k <= K; ++k) {
    term = term * g / k;
    sum += term;
  }
  return sum;
}

/// exp(-rho) / (1 - rho), the all-orders limit of fsum.
inline mp::Real fsum_limit(const mp::Real& rho, int digits) {
  const mp::Real x = detail::checked_rho(rho, digits);
  return mp::exp(-x) / (1 - x);
}

}  // namespace xchg

#endif  // XCHG_POLARIZATION_HPP
