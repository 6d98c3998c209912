#ifndef XCHG_ENERGY_HPP
#define XCHG_ENERGY_HPP

// Leading exchange coefficient j0 of J(R) ~ (2/e) R e^{-R} (j0 + j1/R + ...)
// obtained from the polarization function through order K with three
// exchange formulas, their leading error laws, and decay diagnostics.
//
//   surf:  j0 = -(e/4) (sum_{k<=K} a^k/k!)^2
//   sapt:  (2/e) j0 = -(1/4) sum_{k<=K} L(k)/k!
//   var:   (2/e) j0 = -(1/(4 K!)) sum_{k<=K} L(k, K)/k!
//
// All three tend to -1. Series values are stored as j0; the (2/e) factor
// appears only in jR.

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "xchg/error.hpp"
#include "xchg/integrals.hpp"
#include "xchg/mp/constants.hpp"
#include "xchg/mp/rational.hpp"
#include "xchg/mp/real.hpp"
#include "xchg/parallel.hpp"

namespace xchg {

enum class Formula { surf, sapt, var };

inline constexpr Formula kAllFormulas[] = {Formula::surf, Formula::sapt, Formula::var};

inline const char* to_string(Formula f) {
  switch (f) {
    case Formula::surf: return "surf";
    case Formula::sapt: return "sapt";
    case Formula::var: return "var";
  }
  return "?";
}

inline Formula parse_formula(std::string_view s) {
  if (s == "surf") return Formula::surf;
  if (s == "sapt") return Formula::sapt;
  if (s == "var") return Formula::var;
  throw DomainError("unknown formula '" + std::string(s) + "' (expected surf, sapt or var)");
}

/// Digits needed so that -1 - j0(K) keeps its signal at order K:
/// max(request, 2 K |log10 a| + 2 log10(K!) + 20).
inline int required_digits(int K, int digits) {
  mp::require_digits(digits);
  const double a = 0.19314718055994530942;
  const double need = 2.0 * K * std::abs(std::log10(a)) + 2.0 * std::lgamma(K + 1.0) / std::log(10.0) + 20.0;
  return std::max(digits, static_cast<int>(std::ceil(need)));
}

namespace detail {

inline void require_order(int K) {
  if (K < 0) throw DomainError("polarization order K must be nonnegative");
}

}  // namespace detail

inline mp::Real j0_surf(int K, int digits) {
  detail::require_order(K);
  const mp::Precision prec = mp::working_precision(required_digits(K, digits));
  const mp::Real a = mp::const_a(prec);
  mp::Real term(1, prec);
  mp::Real sum = term;
  for (int k = 1; k <= K; ++k) {
    term = term * a / k;
    sum += term;
  }
  return -(mp::const_e(prec) / 4) * sum * sum;
}

/// sum_{k<=K} L(k)/k! as an exact rational.
inline mp::Rational sapt_sum(int K) {
  detail::require_order(K);
  mp::Rational sum = 0;
  for (int k = 0; k <= K; ++k) {
    sum += L_closed(k) / mp::Rational(mp::factorial(static_cast<unsigned long>(k)));
  }
  return sum;
}

inline mp::Real j0_sapt(int K, int digits) {
  const mp::Precision prec = mp::working_precision(required_digits(K, digits));
  return -(mp::const_e(prec) / 8) * mp::Real(sapt_sum(K), prec);
}

/// j0_var with the propagated quadrature error.
struct J0Value {
  mp::Real value;
  mp::Real abs_error;
};

inline J0Value j0_var_detailed(int K, int digits) {
  detail::require_order(K);
  const int d = required_digits(K, digits);
  const mp::Precision prec = mp::working_precision(d);
  const mp::Real scale = mp::const_e(prec) / (8 * mp::Real(mp::factorial(static_cast<unsigned long>(K)), prec));
  if (K == 0) {
    return {-scale * mp::Real(L_closed(0), prec), mp::Real(prec)};
  }
  const std::vector<LIntegral> row = L_quad_row(K, K, d);
  mp::Real sum(prec);
  mp::Real err(prec);
  for (const auto& l : row) {
    const mp::Real inv_fact(mp::Rational(1, mp::factorial(static_cast<unsigned long>(l.k1))), prec);
    sum += l.value * inv_fact;
    err += l.abs_error * inv_fact;
  }
  J0Value out{-scale * sum, scale * err};
  if (out.abs_error > mp::pow10(-d, prec) * mp::abs(out.value)) {
    throw ConvergenceError("j0_var(" + std::to_string(K) + "): quadrature error budget exceeded");
  }
  return out;
}

inline mp::Real j0_var(int K, int digits) { return j0_var_detailed(K, digits).value; }

inline mp::Real j0(Formula f, int K, int digits) {
  switch (f) {
    case Formula::surf: return j0_surf(K, digits);
    case Formula::sapt: return j0_sapt(K, digits);
    case Formula::var: return j0_var(K, digits);
  }
  throw DomainError("unknown formula");
}

/// Partial sums j0^X for K = 0..K_max.
struct J0Series {
  Formula formula = Formula::surf;
  int K_max = 0;
  int digits = 0;
  std::vector<mp::Real> values;

  /// -1 - j0(K)
  mp::Real error(int K) const { return -1 - values.at(static_cast<std::size_t>(K)); }
};

/// All K share the precision needed at K_max. Variational orders are
/// independent and may be evaluated concurrently; results are collected in
/// ascending K, so the output does not depend on scheduling.
inline J0Series j0_series(Formula f, int K_max, int digits, bool parallel = false) {
  detail::require_order(K_max);
  const int d = required_digits(K_max, digits);
  J0Series s{f, K_max, digits, {}};
  s.values.reserve(static_cast<std::size_t>(K_max + 1));
  const mp::Precision prec = mp::working_precision(d);
  switch (f) {
    case Formula::surf:
      for (int K = 0; K <= K_max; ++K) s.values.push_back(j0_surf(K, d));
      break;
    case Formula::sapt: {
      const mp::Real minus_e_8 = -(mp::const_e(prec) / 8);
      mp::Rational sum = 0;
      for (int K = 0; K <= K_max; ++K) {
        sum += L_closed(K) / mp::Rational(mp::factorial(static_cast<unsigned long>(K)));
        s.values.push_back(minus_e_8 * mp::Real(sum, prec));
      }
      break;
    }
    case Formula::var:
      s.values = detail::indexed_map(K_max + 1, [d](int K) { return j0_var(K, d); }, parallel);
      break;
  }
  return s;
}

/// Constants of the leading error laws.
struct ErrorModel {
  mp::Real a;               // ln 2 - 1/2
  mp::Real A;               // e sqrt(pi) / (4 sqrt(1 - 4a))
  mp::Real sapt_prefactor;  // 1 / (6 e^2)
};

inline ErrorModel error_model_constants(mp::Precision prec) {
  const mp::Real a = mp::const_a(prec);
  const mp::Real e = mp::const_e(prec);
  mp::Real A = e * mp::sqrt(mp::const_pi(prec)) / (4 * mp::sqrt(1 - 4 * a));
  mp::Real pre = 1 / (6 * e * e);
  return {a, std::move(A), std::move(pre)};
}

inline ErrorModel error_model_constants(int digits) {
  return error_model_constants(mp::working_precision(digits));
}

/// Leading-order prediction of -1 - j0(K):
///   surf: -sqrt(e) a^(K+1) / (K+1)!
///   var:  -A a^(2K+2) / (sqrt(K) K! (K+1)!)
///   sapt: -3^(-K) / (6 e^2)
inline mp::Real error_model(Formula f, int K, int digits) {
  if (K < 1) throw DomainError("error_model: K must be at least 1");
  const mp::Precision prec = mp::working_precision(required_digits(K, digits));
  const ErrorModel c = error_model_constants(prec);
  const auto uK = static_cast<unsigned long>(K);
  switch (f) {
    case Formula::surf:
      return -mp::sqrt(mp::const_e(prec)) * mp::pow(c.a, uK + 1) /
             mp::Real(mp::factorial(uK + 1), prec);
    case Formula::var:
      return -c.A * mp::pow(c.a, 2 * uK + 2) /
             (mp::sqrt(mp::Real(K, prec)) * mp::Real(mp::Integer(mp::factorial(uK) * mp::factorial(uK + 1)), prec));
    case Formula::sapt:
      return -c.sapt_prefactor / mp::pow(mp::Real(3, prec), uK);
  }
  throw DomainError("unknown formula");
}

struct DecayRow {
  int K = 0;
  mp::Real j0;
  mp::Real error;       // -1 - j0(K)
  mp::Real model;       // error_model(K)
  mp::Real diagnostic;  // ratio built from error(K+1) / error(K)
  mp::Real reference;   // value the diagnostic approaches at this K
};

struct DecayRateReport {
  Formula formula = Formula::surf;
  std::string diagnostic;       // formula of the per-order ratio
  mp::Real limit;               // K -> inf limit of the diagnostic
  std::string polarization_law; // decay of the error with the polarization function
  std::string multipole_law;    // published decay with the multipole function, echoed verbatim
  std::vector<DecayRow> rows;   // K = 1..K_max
};

inline const char* polarization_law(Formula f) {
  switch (f) {
    case Formula::surf: return "a^K/(K+1)!";
    case Formula::sapt: return "1/3^K";
    case Formula::var: return "a^(2K)/(K!(K+1)!sqrt(K))";
  }
  return "?";
}

/// Multipole-expansion decay rates; constants from the published comparison,
/// not computed here.
inline const char* multipole_law(Formula f) {
  switch (f) {
    case Formula::surf: return "1/4^K";
    case Formula::sapt: return "1/K^2";
    case Formula::var: return "1/16^K";
  }
  return "?";
}

inline DecayRateReport decay_report(Formula f, int K_max, int digits, bool parallel = false) {
  if (K_max < 4) throw DomainError("decay_report: K_max must be at least 4");
  const int d = required_digits(K_max + 1, digits);
  const mp::Precision prec = mp::working_precision(d);
  const J0Series s = j0_series(f, K_max + 1, d, parallel);
  const mp::Real a = mp::const_a(prec);

  DecayRateReport r;
  r.formula = f;
  r.polarization_law = polarization_law(f);
  r.multipole_law = multipole_law(f);
  switch (f) {
    case Formula::sapt:
      r.diagnostic = "eps(K+1)/eps(K)";
      r.limit = mp::Real(1, prec) / 3;
      break;
    case Formula::surf:
      r.diagnostic = "(K+2)*eps(K+1)/eps(K)";
      r.limit = a;
      break;
    case Formula::var:
      r.diagnostic = "eps(K+1)/eps(K)*(K+1)*(K+2)/a^2";
      r.limit = mp::Real(1, prec);
      break;
  }
  for (int K = 1; K <= K_max; ++K) {
    DecayRow row;
    row.K = K;
    row.j0 = s.values[static_cast<std::size_t>(K)];
    row.error = s.error(K);
    row.model = error_model(f, K, d);
    const mp::Real ratio = s.error(K + 1) / row.error;
    switch (f) {
      case Formula::sapt:
        row.diagnostic = ratio;
        row.reference = r.limit;
        break;
      case Formula::surf:
        row.diagnostic = (K + 2) * ratio;
        row.reference = r.limit;
        break;
      case Formula::var:
        row.diagnostic = ratio * ((K + 1) * (K + 2)) / (a * a);
        row.reference = mp::sqrt(mp::Real(K, prec) / (K + 1));
        break;
    }
    r.rows.push_back(std::move(row));
  }
  return r;
}

/// T_p^K = L(K+p, K) / (K+p)! for p = 1..p_max, the terms dropped by the
/// variational sum relative to the full M(K).
inline std::vector<mp::Real> variational_tail_terms(int K, int p_max, int digits) {
  if (K < 1 || p_max < 1) throw DomainError("variational_tail_terms: K and p_max must be positive");
  const std::vector<LIntegral> row = L_quad_row(K + p_max, K, digits);
  std::vector<mp::Real> out;
  for (int p = 1; p <= p_max; ++p) {
    const LIntegral& l = row[static_cast<std::size_t>(K + p)];
    out.push_back(l.value / mp::Real(mp::factorial(static_cast<unsigned long>(K + p)), l.value.precision()));
  }
  return out;
}

/// J(R) ~ (2/e) R e^{-R} (j0 + j1/R).
inline mp::Real jR(const mp::Real& R, const mp::Real& j0, const mp::Real& j1, int digits) {
  if (!(R > 0)) throw DomainError("jR: R must be positive");
  const mp::Precision prec = mp::working_precision(digits);
  const mp::Real r = R.with_precision(std::max(prec, R.precision()));
  return 2 / mp::const_e(r.precision()) * r * mp::exp(-r) * (j0 + j1 / r);
}

}  // namespace xchg

#endif  // XCHG_ENERGY_HPP
