#ifndef XCHG_INTEGRALS_HPP
#define XCHG_INTEGRALS_HPP

// Overlap-type integrals of the collinear polarization factors.
//
//   L(k1, k2) = int_{-1}^{1} (1 + eta)^2 gamma(eta)^k1 gamma(-eta)^k2 d eta,
//   gamma(eta) = (eta - 1)/2 + ln 2 - ln(eta + 1).
//
// Every quadrature runs in t = ln 2 - ln(1 + eta), which maps the interval
// onto [0, inf) and turns the integral into
//
//   int_0^inf 8 e^{-3t} (e^{-t} + t - 1)^k1 (-e^{-t} - ln(1 - e^{-t}))^k2 dt.
//
// The log divergence of gamma(eta) at eta = -1 is gone; the k2 factor keeps a
// log singularity at t = 0 which the double-exponential rule absorbs.

#include <cmath>
#include <string>
#include <vector>

#include "xchg/error.hpp"
#include "xchg/mp/constants.hpp"
#include "xchg/mp/quadrature.hpp"
#include "xchg/mp/rational.hpp"
#include "xchg/mp/real.hpp"
#include "xchg/polarization.hpp"

namespace xchg {

enum class LMethod { quadrature, closed_rational };

inline const char* to_string(LMethod m) {
  return m == LMethod::quadrature ? "quadrature" : "closed-rational";
}

/// One value of L(k1, k2) together with how it was obtained.
struct LIntegral {
  int k1 = 0;
  int k2 = 0;
  mp::Real value;
  LMethod method = LMethod::quadrature;
  int digits = 0;  // certified significant digits
  mp::Real abs_error;
};

/// gamma(eta) for -1 < eta <= 1. Nonnegative, zero at eta = 1.
inline mp::Real gamma_eta(const mp::Real& eta, int digits) {
  const mp::Precision prec = mp::working_precision(digits);
  if (!(eta > -1) || eta > 1) {
    throw DomainError("gamma_eta: eta = " + mp::to_sci(eta, 6) + " outside (-1, 1]");
  }
  const mp::Real x = eta.with_precision(std::max(prec, eta.precision()));
  return (x - 1) / 2 + mp::const_ln2(x.precision()) - mp::log1p(x);
}

/// gamma(eta) at eta = 2e^{-t} - 1, i.e. e^{-t} + t - 1, accurate for small t.
inline mp::Real gamma_of_t(const mp::Real& t) {
  const mp::Precision prec = t.precision();
  if (t < mp::Real(0.00390625, prec)) {
    // sum_{n>=2} (-t)^n / n!
    mp::Real sum(prec);
    mp::Real term = t * t / 2;
    const mp::Real eps = mp::pow10(-static_cast<long>(static_cast<double>(prec.bits) * 0.30103) - 2, prec);
    for (unsigned long n = 3; !term.is_zero(); ++n) {
      sum += term;
      if (mp::abs(term) < eps * sum) break;
      term = -term * t / n;
    }
    return sum;
  }
  return mp::expm1(-t) + t;
}

/// gamma(-eta) at eta = 2e^{-t} - 1, i.e. -e^{-t} - ln(1 - e^{-t}).
inline mp::Real gamma_reflected_of_t(const mp::Real& t) {
  const mp::Real x = mp::exp(-t);
  if (x < mp::Real(0.00390625, t.precision())) return log_tail(x);
  return -x - mp::log(-mp::expm1(-t));
}

namespace detail {
inline void require_nonneg(int v, const char* name) {
  if (v < 0) throw DomainError(std::string(name) + " must be nonnegative");
}
}  // namespace detail

/// L(k, k2) for k = 0..k1_max in a single quadrature pass.
inline std::vector<LIntegral> L_quad_row(int k1_max, int k2, int digits) {
  detail::require_nonneg(k1_max, "k1");
  detail::require_nonneg(k2, "k2");
  const auto n = static_cast<std::size_t>(k1_max + 1);
  auto integrand = [&](const mp::Real& t) {
    std::vector<mp::Real> out;
    out.reserve(n);
    mp::Real v = 8 * mp::exp(-3 * t);
    if (k2 > 0) v *= mp::pow(gamma_reflected_of_t(t), static_cast<unsigned long>(k2));
    const mp::Real g = k1_max > 0 ? gamma_of_t(t) : mp::Real(t.precision());
    for (std::size_t k = 0; k < n; ++k) {
      out.push_back(v);
      v *= g;
    }
    return out;
  };
  auto results = mp::quad_semiinf_vec(n, integrand, digits);
  std::vector<LIntegral> row;
  row.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    row.push_back({static_cast<int>(k), k2, std::move(results[k].value), LMethod::quadrature, digits,
                   std::move(results[k].abs_error_estimate)});
  }
  return row;
}

/// L(k1, k2) by quadrature in the t variable.
inline LIntegral L_quad(int k1, int k2, int digits) {
  detail::require_nonneg(k1, "k1");
  detail::require_nonneg(k2, "k2");
  auto integrand = [&](const mp::Real& t) {
    mp::Real v = 8 * mp::exp(-3 * t);
    if (k1 > 0) v *= mp::pow(gamma_of_t(t), static_cast<unsigned long>(k1));
    if (k2 > 0) v *= mp::pow(gamma_reflected_of_t(t), static_cast<unsigned long>(k2));
    return v;
  };
  auto r = mp::quad_semiinf(integrand, digits);
  return {k1, k2, std::move(r.value), LMethod::quadrature, digits, std::move(r.abs_error_estimate)};
}

/// Truncated exponential series sum_{m=0}^{n} x^m / m!.
inline mp::Rational expsum(int n, const mp::Rational& x) {
  detail::require_nonneg(n, "n");
  mp::Rational term = 1;
  mp::Rational sum = 1;
  for (int m = 1; m <= n; ++m) {
    term = term * x / m;
    sum += term;
  }
  return sum;
}

/// L(k) = L(k, 0) exactly:
///   sum_{l=0}^{k} 8 k! e_{k-l}(-l-3) / (l! (l+3)^{k-l+1}).
inline mp::Rational L_closed(int k) {
  detail::require_nonneg(k, "k");
  const auto uk = static_cast<unsigned long>(k);
  const mp::Integer k_fact = mp::factorial(uk);
  mp::Rational sum = 0;
  for (int l = 0; l <= k; ++l) {
    const auto ul = static_cast<unsigned long>(l);
    mp::Integer denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), ul + 3, uk - ul + 1);
    denom *= mp::factorial(ul);
    sum += mp::Rational(8 * k_fact) * expsum(k - l, mp::Rational(-l - 3)) / mp::Rational(denom);
  }
  return sum;
}

/// L(k) as an LIntegral tagged closed-rational, rounded to `digits`.
inline LIntegral L_closed_value(int k, int digits) {
  const mp::Precision prec = mp::working_precision(digits);
  return {k, 0, mp::Real(L_closed(k), prec), LMethod::closed_rational, digits, mp::Real(prec)};
}

/// M(K) = sum_k L(k, K) / k! = 8 K! / e.
inline mp::Real M_of_K(int K, int digits) {
  detail::require_nonneg(K, "K");
  const mp::Precision prec = mp::working_precision(digits);
  return 8 * mp::Real(mp::factorial(static_cast<unsigned long>(K)), prec) / mp::const_e(prec);
}

struct LaplaceApprox {
  int K = 0;
  int p = 0;
  mp::Real value;    // sqrt(pi / (K |lambda2|)) a^(2K+p)
  mp::Real lambda2;  // curvature of ln[gamma(eta) gamma(-eta)] at eta = 0
};

/// lambda2 = (4a - 1) / (4a^2).
inline mp::Real laplace_lambda2(mp::Precision prec) {
  const mp::Real a = mp::const_a(prec);
  return (4 * a - 1) / (4 * a * a);
}

inline mp::Real laplace_lambda2(int digits) { return laplace_lambda2(mp::working_precision(digits)); }

/// Leading Laplace-method estimate of L(K + p, K).
inline LaplaceApprox laplace_L(int K, int p, int digits) {
  if (K < 1) throw DomainError("laplace_L: K must be positive");
  detail::require_nonneg(p, "p");
  const mp::Precision prec = mp::working_precision(digits);
  const mp::Real a = mp::const_a(prec);
  mp::Real lambda2 = laplace_lambda2(prec);
  mp::Real value = mp::sqrt(mp::const_pi(prec) / (K * mp::abs(lambda2))) *
                   mp::pow(a, static_cast<unsigned long>(2 * K + p));
  return {K, p, std::move(value), std::move(lambda2)};
}

/// Q_m = int_{-1}^{1} [gamma(eta) gamma(-eta)]^m d eta
///     = int_0^inf 2 e^{-t} [(e^{-t}+t-1)(-e^{-t}-ln(1-e^{-t}))]^m dt.
inline mp::QuadratureResult Q_integral(int m, int digits) {
  detail::require_nonneg(m, "m");
  auto integrand = [&](const mp::Real& t) {
    mp::Real v = 2 * mp::exp(-t);
    if (m > 0) {
      v *= mp::pow(gamma_of_t(t) * gamma_reflected_of_t(t), static_cast<unsigned long>(m));
    }
    return v;
  };
  return mp::quad_semiinf(integrand, digits);
}

/// P_m = int_{-1}^{1} (1+eta)^4 gamma(eta)^m d eta = 32 int_0^inf e^{-5t} (e^{-t}+t-1)^m dt.
inline mp::QuadratureResult P_integral(int m, int digits) {
  detail::require_nonneg(m, "m");
  auto integrand = [&](const mp::Real& t) {
    mp::Real v = 32 * mp::exp(-5 * t);
    if (m > 0) v *= mp::pow(gamma_of_t(t), static_cast<unsigned long>(m));
    return v;
  };
  return mp::quad_semiinf(integrand, digits);
}

/// (32/5) m! / 5^m, the bound on P_m from e^{-t} + t - 1 <= t.
inline mp::Rational P_bound(int m) {
  detail::require_nonneg(m, "m");
  mp::Integer five_m;
  mpz_ui_pow_ui(five_m.get_mpz_t(), 5, static_cast<unsigned long>(m));
  return mp::Rational(32 * mp::factorial(static_cast<unsigned long>(m))) / mp::Rational(5 * five_m);
}

/// 4 [ (2/5) (2p)! Q_{2K} ]^{1/2} 5^{-p} / (K+p)!, the majorant of
/// T_p^K = L(K+p, K) / (K+p)!.
inline mp::Real T_tilde(int K, int p, const mp::Real& Q_2K) {
  const mp::Precision prec = Q_2K.precision();
  const mp::Real two_p_fact(mp::factorial(static_cast<unsigned long>(2 * p)), prec);
  const mp::Real kp_fact(mp::factorial(static_cast<unsigned long>(K + p)), prec);
  return 4 * mp::sqrt(2 * two_p_fact * Q_2K / 5) /
         (mp::pow(mp::Real(5, prec), static_cast<unsigned long>(p)) * kp_fact);
}

struct BoundChain {
  int K = 0;
  int p = 0;
  mp::Real P_2p;      // by quadrature
  mp::Real Q_2K;      // by quadrature
  mp::Real schwartz;  // sqrt(P_2p Q_2K) >= L(K+p, K)
  mp::Real P_bound;   // (32/5)(2p)!/5^(2p) >= P_2p
  mp::Real T_tilde;
};

inline BoundChain bound_chain(int K, int p, int digits) {
  if (K < 1 || p < 1) throw DomainError("bound_chain: K and p must be positive");
  const mp::Precision prec = mp::working_precision(digits);
  mp::Real P = P_integral(2 * p, digits).value;
  mp::Real Q = Q_integral(2 * K, digits).value;
  mp::Real schwartz = mp::sqrt(P * Q);
  mp::Real bound(P_bound(2 * p), prec);
  mp::Real tt = T_tilde(K, p, Q);
  return {K, p, std::move(P), std::move(Q), std::move(schwartz), std::move(bound), std::move(tt)};
}

}  // namespace xchg

#endif  // XCHG_INTEGRALS_HPP
