// Certify a loneliness lower bound for {9, 11} modulo 1009 and show the
// pieces of the argument: the independence budget, the arc, and the count.

#include <iostream>

#include "lonerun/lonerun.hpp"

int main() {
  using namespace lonerun;
  speed_set D({9, 11});
  const std::uint64_t p = 1009;
  const rational eps(9, 20);

  auto cert = certify_kappa(D, p, eps);
  std::cout << "speeds           {9, 11} mod " << p << "\n";
  std::cout << "epsilon          " << eps.to_string() << "\n";
  std::cout << "budget L         " << cert.L_used << "\n";
  std::cout << "independent      " << (cert.certified ? "yes" : "no") << "\n";
  std::cout << "vectors checked  " << cert.independence.vectors_checked << "\n";
  std::cout << "arc size         " << cert.arc_size << "\n";
  std::cout << "licensed         " << (cert.positivity_licensed ? "yes" : "no") << "\n";
  if (cert.lonely_I) std::cout << "lonely count I   " << to_string(*cert.lonely_I) << "\n";
  if (cert.witness_t) std::cout << "witness time     " << *cert.witness_t << "/" << p << "\n";
  if (cert.kappa_check)
    std::cout << "kappa            " << cert.kappa_check->value.to_string() << "\n";
  std::cout << "conclusion:      kappa >= 1/2 - " << eps.to_string() << " = "
            << (rational(1, 2) - eps).to_string() << "\n";
  return 0;
}
