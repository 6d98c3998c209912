// Prints how fast the three j0 series approach -1 and checks one point
// against the two-center solver.

#include <iostream>

#include "xchg/xchg.hpp"

int main() {
  constexpr int digits = 30;
  constexpr int K_max = 8;

  for (auto f : xchg::kAllFormulas) {
    const xchg::J0Series s = xchg::j0_series(f, K_max, digits);
    std::cout << xchg::to_string(f) << "\n";
    for (int K = 1; K <= K_max; ++K) {
      std::cout << "  K=" << K << "  j0=" << xchg::mp::to_sci(s.values[K], 20)
                << "  -1-j0=" << xchg::mp::to_sci(s.error(K), 4)
                << "  model=" << xchg::mp::to_sci(xchg::error_model(f, K, digits), 4) << "\n";
    }
  }

  const xchg::mp::Real R(20, xchg::mp::working_precision(digits));
  const xchg::AsymptoticRow row = xchg::asymptotic_row(R, digits);
  std::cout << "R=20  J=" << xchg::mp::to_sci(row.result.J, 12)
            << "  J e/(2R e^-R)=" << xchg::mp::to_sci(row.result.scaled_ratio, 8)
            << "  -1-1/(2R)=" << xchg::mp::to_sci(row.model, 8) << "\n";
}
