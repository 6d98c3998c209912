#ifndef XCHG_XCHG_HPP
#define XCHG_XCHG_HPP

#include "xchg/energy.hpp"
#include "xchg/error.hpp"
#include "xchg/integrals.hpp"
#include "xchg/io.hpp"
#include "xchg/mp/constants.hpp"
#include "xchg/mp/quadrature.hpp"
#include "xchg/mp/rational.hpp"
#include "xchg/mp/real.hpp"
#include "xchg/oracle.hpp"
#include "xchg/parallel.hpp"
#include "xchg/polarization.hpp"

#endif  // XCHG_XCHG_HPP
