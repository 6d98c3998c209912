#ifndef XCHG_PARALLEL_HPP
#define XCHG_PARALLEL_HPP

#include <future>
#include <vector>

#include <mpfr.h>

namespace xchg::detail {

inline bool mpfr_threads_ok() { return mpfr_buildopt_tls_p() != 0; }

/// fn(0..n-1), possibly concurrently; results always in index order.
template <class Fn>
auto indexed_map(int n, Fn fn, bool parallel) {
  using T = decltype(fn(0));
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(n));
  if (parallel && n > 1 && mpfr_threads_ok()) {
    std::vector<std::future<T>> futures;
    futures.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) futures.push_back(std::async(std::launch::async, fn, i));
    for (auto& f : futures) out.push_back(f.get());
  } else {
    for (int i = 0; i < n; ++i) out.push_back(fn(i));
  }
  return out;
}

}  // namespace xchg::detail

#endif  // XCHG_PARALLEL_HPP
