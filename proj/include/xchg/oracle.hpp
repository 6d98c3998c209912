#ifndef XCHG_ORACLE_HPP
#define XCHG_ORACLE_HPP

// Reference energies of the lowest gerade and ungerade states of
// H = -Delta/2 - 1/r_a - 1/r_b + 1/R, used as ground truth for the exchange
// energy J = (E_g - E_u)/2.
//
// In prolate spheroidal coordinates xi = (r_a + r_b)/R, eta = (r_a - r_b)/R the
// sigma states separate into
//
//   d/dxi  (xi^2 - 1) d/dxi  Lambda + (C + 2R xi - p^2 xi^2) Lambda = 0,
//   d/deta (1 - eta^2) d/deta M     + (p^2 eta^2 - C) M          = 0,
//
// with p^2 = -E_el R^2 / 2. Both are eigenproblems for the separation constant
// C at fixed p:
//
//   * M = sum_l f_l P_l(eta) (l even for gerade, odd for ungerade) gives a
//     symmetric tridiagonal matrix; the nodeless (in its parity class) state
//     is its largest eigenvalue.
//   * Lambda = (xi+1)^sigma e^{-p xi} sum_n g_n ((xi-1)/(xi+1))^n with
//     sigma = R/p - 1 (Jaffe) gives the three-term recurrence
//       (n+1)^2 g_{n+1} + (C + k0 - 2n^2 + (2 sigma - 4p) n) g_n + (n-1-sigma)^2 g_{n-1} = 0,
//       k0 = 2R + R/p - p^2 - 2p - 1,
//     whose matrix is similar to a symmetric one; the nodeless radial state
//     is its smallest eigenvalue.
//
// The energy is fixed by the p where both constants agree.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "xchg/error.hpp"
#include "xchg/mp/constants.hpp"
#include "xchg/mp/real.hpp"
#include "xchg/parallel.hpp"

namespace xchg {

inline constexpr double kOracleMinR = 1.0;
inline constexpr double kOracleMaxR = 40.0;
inline constexpr int kOracleMaxDigits = 40;

struct OracleResult {
  mp::Real R;
  mp::Real E_g;           // total energy, hartree
  mp::Real E_u;
  mp::Real J;             // (E_g - E_u) / 2
  mp::Real scaled_ratio;  // J e / (2 R e^{-R})
  int digits = 0;
};

namespace detail {

/// Symmetric tridiagonal matrix given by its diagonal and squared
/// off-diagonal (off2[i] couples rows i and i+1).
struct SymTridiag {
  std::vector<mp::Real> diag;
  std::vector<mp::Real> off2;
};

/// Number of eigenvalues strictly below x (Sturm sequence of LDL^T pivots).
inline int sturm_count(const SymTridiag& T, const mp::Real& x) {
  const mp::Precision prec = x.precision();
  const mp::Real tiny = mp::pow10(-static_cast<long>(static_cast<double>(prec.bits) * 0.30103) - 10, prec);
  int count = 0;
  mp::Real q(prec);
  for (std::size_t i = 0; i < T.diag.size(); ++i) {
    q = i == 0 ? T.diag[0] - x : T.diag[i] - x - T.off2[i - 1] / q;
    if (q.is_zero()) q = tiny;
    if (q < 0) ++count;
  }
  return count;
}

/// det(T - x I) by the three-term recurrence (MPFR's exponent range makes
/// overflow a non-issue at the sizes used here).
inline mp::Real char_poly(const SymTridiag& T, const mp::Real& x) {
  mp::Real prev(1, x.precision());
  mp::Real cur = T.diag[0] - x;
  for (std::size_t i = 1; i < T.diag.size(); ++i) {
    mp::Real next = (T.diag[i] - x) * cur - T.off2[i - 1] * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// Root of f in [lo, hi] (f(lo), f(hi) of opposite sign) by the Illinois
/// variant of regula falsi.
template <class F>
mp::Real illinois(F&& f, mp::Real lo, mp::Real hi, const mp::Real& rel_tol, int max_iter,
                  const char* what) {
  mp::Real flo = f(lo);
  mp::Real fhi = f(hi);
  if (flo.is_zero()) return lo;
  if (fhi.is_zero()) return hi;
  if (flo.sign() == fhi.sign()) throw ConvergenceError(std::string(what) + ": root not bracketed");
  int side = 0;
  for (int it = 0; it < max_iter; ++it) {
    mp::Real x = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(x > lo && x < hi)) x = (lo + hi) / 2;
    const mp::Real fx = f(x);
    if (fx.is_zero()) return x;
    if (fx.sign() == fhi.sign()) {
      hi = x;
      fhi = fx;
      if (side == 1) flo /= 2;
      side = 1;
    } else {
      lo = x;
      flo = fx;
      if (side == -1) fhi /= 2;
      side = -1;
    }
    const mp::Real scale = mp::max(mp::max(mp::abs(lo), mp::abs(hi)), mp::Real(1, lo.precision()));
    if (hi - lo <= rel_tol * scale) return (lo + hi) / 2;
  }
  throw ConvergenceError(std::string(what) + ": no convergence in " + std::to_string(max_iter) + " iterations");
}

/// Smallest (or largest) eigenvalue: Sturm bisection until the target is
/// isolated, then Illinois on the characteristic polynomial.
inline mp::Real extreme_eigenvalue(const SymTridiag& T, bool largest, const mp::Real& rel_tol) {
  const mp::Precision prec = rel_tol.precision();
  const std::size_t n = T.diag.size();
  mp::Real lo = T.diag[0];
  mp::Real hi = T.diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    mp::Real r(prec);
    if (i > 0) r += mp::sqrt(T.off2[i - 1]);
    if (i + 1 < n) r += mp::sqrt(T.off2[i]);
    lo = mp::min(lo, T.diag[i] - r);
    hi = mp::max(hi, T.diag[i] + r);
  }
  lo -= 1;
  hi += 1;
  const int target = largest ? static_cast<int>(n) - 1 : 0;
  // Shrink [lo, hi] until it holds only the target eigenvalue.
  int below_lo = 0;
  int below_hi = static_cast<int>(n);
  while (below_lo != target || below_hi != target + 1) {
    const mp::Real mid = (lo + hi) / 2;
    if (!(mid > lo && mid < hi)) throw ConvergenceError("extreme_eigenvalue: eigenvalues not separable");
    const int c = sturm_count(T, mid);
    if (c <= target) {
      lo = mid;
      below_lo = c;
    } else {
      hi = mid;
      below_hi = c;
    }
  }
  auto f = [&](const mp::Real& x) { return char_poly(T, x); };
  return illinois(f, lo, hi, rel_tol, 500, "extreme_eigenvalue");
}

inline SymTridiag angular_matrix(const mp::Real& p, int parity, int size) {
  SymTridiag T;
  const mp::Real p2 = p * p;
  for (int i = 0; i < size; ++i) {
    const long l = parity + 2L * i;
    const mp::Real beta = mp::Real(2 * l * l + 2 * l - 1, p.precision()) / ((2 * l - 1) * (2 * l + 3));
    T.diag.push_back(-l * (l + 1) + p2 * beta);
    if (i + 1 < size) {
      const mp::Real num = p2 * p2 * ((l + 1) * (l + 1) * (l + 2) * (l + 2));
      T.off2.push_back(num / ((2 * l + 3) * (2 * l + 3)) / ((2 * l + 1) * (2 * l + 5)));
    }
  }
  return T;
}

inline SymTridiag radial_matrix(const mp::Real& p, const mp::Real& R, int size) {
  SymTridiag T;
  const mp::Real sigma = R / p - 1;
  const mp::Real k0 = 2 * R + R / p - p * p - 2 * p - 1;
  const mp::Real slope = 2 * sigma - 4 * p;
  for (long n = 0; n < size; ++n) {
    T.diag.push_back(2 * n * n - slope * n - k0);
    if (n + 1 < size) {
      const long m = n + 1;
      const mp::Real c = (m - 1) - sigma;
      T.off2.push_back(c * c * (m * m));
    }
  }
  return T;
}

/// Matrix sizes giving converged separation constants at this (R, precision).
struct Truncation {
  int angular = 0;
  int radial = 0;
};

inline Truncation choose_truncation(const mp::Real& p, const mp::Real& R, int parity, const mp::Real& rel_tol) {
  Truncation t;
  auto converge = [&](auto&& eval, int start) {
    int size = start;
    mp::Real prev = eval(size);
    for (int grow = 0; grow < 12; ++grow) {
      const int next = size + size / 2;
      mp::Real cur = eval(next);
      if (mp::abs(cur - prev) <= rel_tol * (1 + mp::abs(cur))) return next + next / 4;
      size = next;
      prev = std::move(cur);
    }
    throw ConvergenceError("oracle: separation-constant expansion did not converge");
  };
  t.angular = converge([&](int n) { return extreme_eigenvalue(angular_matrix(p, parity, n), true, rel_tol); },
                       std::max(12, static_cast<int>(p.to_double()) + 8));
  t.radial = converge([&](int n) { return extreme_eigenvalue(radial_matrix(p, R, n), false, rel_tol); }, 32);
  return t;
}

/// C_rad(p) - C_ang(p); zero at the eigenvalue.
inline mp::Real separation_mismatch(const mp::Real& p, const mp::Real& R, int parity, const Truncation& t,
                                    const mp::Real& rel_tol) {
  return extreme_eigenvalue(radial_matrix(p, R, t.radial), false, rel_tol) -
         extreme_eigenvalue(angular_matrix(p, parity, t.angular), true, rel_tol);
}

/// p = R sqrt(-E_el / 2) of the lowest state with the given parity
/// (0 gerade, 1 ungerade).
inline mp::Real solve_p(const mp::Real& R, int parity, int work_digits) {
  // Coarse bracket at modest precision; E_el lies in (-2, -1/2) for both
  // states on the supported range, i.e. p in (R/2, R).
  const int coarse_digits = 20;
  const mp::Precision cprec = mp::precision_for_digits(coarse_digits);
  const mp::Real cR = R.with_precision(cprec);
  const mp::Real ctol = mp::pow10(-coarse_digits, cprec);
    const int points = 24;
  const double lo_frac = 0.45;
  const double hi_frac = 1.05;
  const Truncation ct = choose_truncation(cR * mp::Real(lo_frac, cprec), cR, parity, ctol);
  std::vector<mp::Real> grid;
  std::vector<int> signs;
  for (int i = 0; i <= points; ++i) {
    const double frac = lo_frac + (hi_frac - lo_frac) * i / points;
    grid.push_back(cR * mp::Real(frac, cprec));
    signs.push_back(separation_mismatch(grid.back(), cR, parity, ct, ctol).sign());
  }
  int cell = -1;
  for (int i = points - 1; i >= 0; --i) {
    if (signs[static_cast<std::size_t>(i)] != signs[static_cast<std::size_t>(i + 1)]) {
      cell = i;
      break;
    }
  }
  if (cell < 0) throw ConvergenceError("oracle: no eigenvalue found in the p scan at R = " + mp::to_sci(R, 6));

  const mp::Precision prec = mp::precision_for_digits(work_digits);
  const mp::Real tol = mp::pow10(-work_digits, prec);
  const mp::Real Rw = R.with_precision(prec);
  mp::Real lo = grid[static_cast<std::size_t>(cell)].with_precision(prec);
  mp::Real hi = grid[static_cast<std::size_t>(cell + 1)].with_precision(prec);
  const Truncation t = choose_truncation((lo + hi) / 2, Rw, parity, tol);
  auto f = [&](const mp::Real& p) { return separation_mismatch(p, Rw, parity, t, tol); };
  return illinois(f, std::move(lo), std::move(hi), tol, 400, "oracle p search");
}

}  // namespace detail

/// Lowest gerade/ungerade energies at internuclear distance R (bohr).
inline OracleResult solve_h2plus(const mp::Real& R, int digits) {
  mp::require_digits(digits);
  if (digits > kOracleMaxDigits) {
    throw DomainError("oracle: at most " + std::to_string(kOracleMaxDigits) + " digits supported");
  }
  if (R < mp::Real(kOracleMinR, R.precision()) || R > mp::Real(kOracleMaxR, R.precision())) {
    throw DomainError("oracle: R = " + mp::to_sci(R, 6) + " outside supported range [1, 40]");
  }
  // J ~ e^{-R}: carry R/ln 10 extra digits so the gerade/ungerade difference
  // keeps the requested accuracy.
  const int work = mp::working_digits(digits) + static_cast<int>(std::ceil(R.to_double() / std::log(10.0))) + 5;
  const mp::Precision prec = mp::precision_for_digits(work);
  const mp::Real Rw = R.with_precision(prec);

  const mp::Real p_g = detail::solve_p(Rw, 0, work);
  const mp::Real p_u = detail::solve_p(Rw, 1, work);
  const mp::Real R2 = Rw * Rw;
  OracleResult out;
  out.R = Rw;
  out.E_g = -2 * p_g * p_g / R2 + 1 / Rw;
  out.E_u = -2 * p_u * p_u / R2 + 1 / Rw;
  out.J = -(p_g - p_u) * (p_g + p_u) / R2;
  out.scaled_ratio = out.J * mp::exp(Rw + 1) / (2 * Rw);
  out.digits = digits;
  return out;
}

struct AsymptoticRow {
  OracleResult result;
  mp::Real model;      // -1 - 1/(2R)
  mp::Real deviation;  // scaled_ratio - model
};

/// Scaled exchange energy at one R against the two-term law j0 = -1, j1 = -1/2.
/// Solver failures are rethrown with R in the message.
inline AsymptoticRow asymptotic_row(const mp::Real& R, int digits) {
  OracleResult r;
  try {
    r = solve_h2plus(R, digits);
  } catch (const DomainError&) {
    throw;
  } catch (const Error& e) {
    throw ConvergenceError("oracle at R = " + mp::to_sci(R, 6) + ": " + e.what());
  }
  mp::Real model = -1 - 1 / (2 * r.R);
  mp::Real dev = r.scaled_ratio - model;
  return {std::move(r), std::move(model), std::move(dev)};
}

/// asymptotic_row over an R grid; the law is only meaningful for R >= 8.
inline std::vector<AsymptoticRow> asymptotic_check(const std::vector<mp::Real>& Rs, int digits,
                                                   bool parallel = false) {
  for (const auto& R : Rs) {
    if (R < 8) throw DomainError("asymptotic_check: R = " + mp::to_sci(R, 6) + " below 8");
  }
  return detail::indexed_map(
      static_cast<int>(Rs.size()), [&](int i) { return asymptotic_row(Rs[static_cast<std::size_t>(i)], digits); },
      parallel);
}

}  // namespace xchg

#endif  // XCHG_ORACLE_HPP
