// Prints the skew-sum probe as CSV: exact containment ratios for every
// feasible n, pinched between the side-shaded closed form and 1.

#include <iostream>

#include "meshlimit/meshlimit.hpp"

namespace ml = meshlimit;

int main() {
  const auto report =
      ml::probe_conjecture(ml::Conjecture::skewsum_half, std::nullopt, 8);
  std::cout << ml::to_csv(report);
  std::cerr << "last ratio " << report.last_ratio << ", approaching from "
            << report.approaching << '\n';
  return 0;
}
