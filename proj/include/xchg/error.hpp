#ifndef XCHG_ERROR_HPP
#define XCHG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace xchg {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the requested operation
/// (precision <= 0, rho >= 1, eta <= -1, R out of range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative scheme (quadrature refinement, eigenvalue search) did not
/// reach its tolerance within its evaluation budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace xchg

#endif  // XCHG_ERROR_HPP
