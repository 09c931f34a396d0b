// Color the distance graph of {3, 4, 5} on 1..500 with the interval coloring
// and compare against the greedy baseline.

#include <iostream>

#include "lonerun/lonerun.hpp"

int main() {
  using namespace lonerun;
  speed_set D({3, 4, 5});
  const std::uint64_t M = 500;

  auto col = build_coloring(D, M);
  std::cout << "kappa            " << col.kappa.to_string() << "\n";
  std::cout << "witness time     " << col.witness_time.to_string() << "\n";
  std::cout << "colors           " << col.n_colors << " (used " << col.colors_used << ")\n";
  std::cout << "proper           " << (col.violations.empty() ? "yes" : "no") << "\n";

  auto greedy = greedy_chromatic_upper(D, M);
  std::cout << "greedy colors    " << greedy << " (bound |D|+1 = " << D.size() + 1 << ")\n";

  auto rep = chi_upper_report(D);
  std::cout << "best upper bound " << rep.effective << "\n";
  return 0;
}
