#ifndef XCHG_MP_QUADRATURE_HPP
#define XCHG_MP_QUADRATURE_HPP

// Double-exponential quadrature at arbitrary precision.
//
// Semi-infinite integrals use the exp-sinh map t = exp(pi/2 sinh u), finite
// ones the tanh-sinh map. Both send the endpoints to u = +-inf where the
// transformed integrand decays double-exponentially, so integrable endpoint
// singularities (logarithms in particular) need no special treatment. The
// step is halved level by level; each level only evaluates the new odd nodes.

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "xchg/error.hpp"
#include "xchg/mp/constants.hpp"
#include "xchg/mp/real.hpp"

namespace xchg::mp {

struct QuadratureResult {
  Real value;
  Real abs_error_estimate;
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  int max_level = 12;      // finest step is 2^-max_level
  double max_u = 7.0;      // hard cap on |u| in the transformed variable
  int tail_run = 3;        // consecutive negligible terms that end a sweep
};

namespace detail {

/// Shared driver. `node(u, out)` evaluates weight * integrand for every
/// component at transformed abscissa u and returns false when the node lies
/// outside the representable range (it then contributes nothing).
template <class Node>
std::vector<QuadratureResult> de_driver(std::size_t n, Node&& node, int digits,
                                        const QuadratureOptions& opt, const char* what) {
  const Precision prec = working_precision(digits);
  const Real tol = pow10(-digits, prec) / 10;
  const Real tail = pow10(-(working_digits(digits) + 2), prec);

  std::vector<Real> sum(n, Real(prec));
  std::vector<Real> l1(n, Real(prec));
  std::vector<Real> terms(n, Real(prec));
  std::size_t evaluations = 0;

  auto add = [&](double u) {
    ++evaluations;
    if (!node(u, terms)) return true;
    bool negligible = true;
    for (std::size_t c = 0; c < n; ++c) {
      sum[c] += terms[c];
      const Real mag = abs(terms[c]);
      l1[c] += mag;
      if (mag > tail * l1[c]) negligible = false;
    }
    return negligible;
  };

  auto sweep = [&](double first, double step) {
    for (const double dir : {1.0, -1.0}) {
      int run = 0;
      for (double u = first; u <= opt.max_u; u += step) {
        run = add(dir * u) ? run + 1 : 0;
        if (run >= opt.tail_run) break;
      }
    }
  };

  add(0.0);
  sweep(1.0, 1.0);
  std::vector<Real> previous = sum;

  for (int level = 1; level <= opt.max_level; ++level) {
    const double h = std::ldexp(1.0, -level);
    sweep(h, 2.0 * h);

    bool converged = level >= 3;
    std::vector<Real> current(n, Real(prec));
    std::vector<Real> errors(n, Real(prec));
    for (std::size_t c = 0; c < n; ++c) {
      current[c] = sum[c] * Real(h, prec);
      errors[c] = abs(current[c] - previous[c]);
      const Real scale = max(abs(current[c]), l1[c] * Real(h, prec));
      if (errors[c] > tol * scale) converged = false;
    }
    if (converged) {
      std::vector<QuadratureResult> out;
      out.reserve(n);
      for (std::size_t c = 0; c < n; ++c) {
        out.push_back({std::move(current[c]), std::move(errors[c]), evaluations});
      }
      return out;
    }
    previous = std::move(current);
  }
  throw ConvergenceError(std::string(what) + ": no convergence to " + std::to_string(digits) +
                         " digits within " + std::to_string(evaluations) + " evaluations");
}

}  // namespace detail

/// Vector-valued integral over [0, inf). `f(t)` returns `n` integrand values
/// sharing the abscissa t; every component must meet the tolerance.
template <class F>
std::vector<QuadratureResult> quad_semiinf_vec(std::size_t n, F&& f, int digits,
                                               const QuadratureOptions& opt = {}) {
  const Precision prec = working_precision(digits);
  const Real half_pi = const_pi(prec) / 2;
  auto node = [&](double u, std::vector<Real>& terms) {
    const Real s = half_pi * sinh(Real(u, prec));
    const Real t = exp(s);
    if (t.is_zero() || !t.is_finite()) return false;
    const Real w = t * half_pi * cosh(Real(u, prec));
    std::vector<Real> values = f(t);
    if (values.size() != n) throw DomainError("quad_semiinf_vec: integrand returned wrong arity");
    for (std::size_t c = 0; c < n; ++c) terms[c] = values[c] * w;
    return true;
  };
  return detail::de_driver(n, node, digits, opt, "quad_semiinf");
}

/// Integral of f over [0, inf) to `digits` significant digits. The integrand
/// must decay at least exponentially; an integrable singularity at t = 0 is
/// allowed.
template <class F>
QuadratureResult quad_semiinf(F&& f, int digits, const QuadratureOptions& opt = {}) {
  auto wrapped = [&](const Real& t) { return std::vector<Real>{f(t)}; };
  return std::move(quad_semiinf_vec(1, wrapped, digits, opt).front());
}

/// Integral of f over [lo, hi] by tanh-sinh. Nodes that round onto an
/// endpoint at working precision are dropped.
template <class F>
QuadratureResult quad_finite(F&& f, const Real& lo, const Real& hi, int digits,
                             const QuadratureOptions& opt = {}) {
  const Precision prec = working_precision(digits);
  const Real half_pi = const_pi(prec) / 2;
  const Real a = lo.with_precision(prec);
  const Real b = hi.with_precision(prec);
  const Real mid = (a + b) / 2;
  const Real half = (b - a) / 2;
  auto node = [&](double u, std::vector<Real>& terms) {
    const Real s = half_pi * sinh(Real(u, prec));
    const Real ch = cosh(s);
    const Real x = mid + half * (sinh(s) / ch);
    if (!(x > a) || !(x < b)) return false;
    const Real w = half * half_pi * cosh(Real(u, prec)) / (ch * ch);
    terms[0] = f(x) * w;
    return true;
  };
  return std::move(detail::de_driver(1, node, digits, opt, "quad_finite").front());
}

}  // namespace xchg::mp

#endif  // XCHG_MP_QUADRATURE_HPP
