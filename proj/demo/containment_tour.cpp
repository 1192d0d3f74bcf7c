// A short tour of the library: parse a pattern, inspect one host, sweep a
// count series, and compare a closed form against the exhaustive count.

#include <iostream>

#include "meshlimit/meshlimit.hpp"

namespace ml = meshlimit;

int main() {
  const ml::MeshPattern bordered = ml::parse_pattern("2143:border");

  const ml::Permutation host({3, 1, 5, 2, 4});
  ml::ContainmentTester tester(bordered);
  std::cout << "pattern " << ml::format_pattern(bordered) << '\n'
            << "host    " << ml::format_perm(host) << '\n'
            << "contains: " << (tester.contains(host.letters()) ? "yes" : "no")
            << ", witnesses: " << tester.count_witnesses(host.letters()) << "\n\n";

  std::cout << "n  exhaustive  closed-form\n";
  for (const ml::CountRow& row : ml::count_series(bordered, 4, 7).rows)
    std::cout << row.n << "  " << row.count << "  " << ml::formula_border(row.n).value
              << '\n';

  std::cout << "\ndistinct dihedral images of the side-shaded pattern: "
            << ml::presets::sideshade().orbit().size() << '\n';

  const double at = ml::ratio_at({ml::Family::border}, 10000);
  std::cout << "border ratio at n = 10000: " << at << " (limit "
            << ml::family_limit({ml::Family::border}) << ")\n";
  return 0;
}
