// Evaluate the loneliness constant of the first few sharp sets {1, ..., k}.

#include <iostream>

#include "lonerun/lonerun.hpp"

int main() {
  using namespace lonerun;
  std::cout << "k  kappa({1..k})  witness\n";
  for (std::uint64_t k = 1; k <= 8; ++k) {
    std::vector<std::uint64_t> v(k);
    for (std::uint64_t i = 0; i < k; ++i) v[i] = i + 1;
    auto res = kappa_exact(speed_set(v));
    std::cout << k << "  " << res.value.to_string() << "  " << res.witness.to_string() << "\n";
  }
  return 0;
}
