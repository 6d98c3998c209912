#ifndef XCHG_MP_CONSTANTS_HPP
#define XCHG_MP_CONSTANTS_HPP

#include <map>
#include <mutex>
#include <shared_mutex>

#include "xchg/mp/real.hpp"

namespace xchg::mp {

/// e, pi and ln 2 at one precision.
struct ConstantSet {
  Real e;
  Real pi;
  Real ln2;
};

namespace detail {

inline ConstantSet compute_constants(Precision prec) {
  ConstantSet c{Real(prec), Real(prec), Real(prec)};
  Real one(1, prec);
  mpfr_exp(c.e.get(), one.get(), MPFR_RNDN);
  mpfr_const_pi(c.pi.get(), MPFR_RNDN);
  mpfr_const_log2(c.ln2.get(), MPFR_RNDN);
  return c;
}

class ConstantCache {
 public:
  ConstantSet get(Precision prec) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = cache_.find(prec.bits); it != cache_.end()) return it->second;
    }
    ConstantSet fresh = compute_constants(prec);
    std::unique_lock lock(mutex_);
    auto [it, inserted] = cache_.try_emplace(prec.bits, std::move(fresh));
    return it->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<mpfr_prec_t, ConstantSet> cache_;
};

inline ConstantCache& constant_cache() {
  static ConstantCache cache;
  return cache;
}

}  // namespace detail

inline ConstantSet constants(Precision prec) { return detail::constant_cache().get(prec); }

inline Real const_e(Precision prec) { return constants(prec).e; }
inline Real const_pi(Precision prec) { return constants(prec).pi; }
inline Real const_ln2(Precision prec) { return constants(prec).ln2; }

/// a = ln 2 - 1/2 at the working precision for `digits`.
inline Real const_a(Precision prec) { return const_ln2(prec) - Real(0.5, prec); }

inline Real const_a(int digits) { return const_a(working_precision(digits)); }

}  // namespace xchg::mp

#endif  // XCHG_MP_CONSTANTS_HPP
