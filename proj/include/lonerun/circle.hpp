#pragma once

// The circle metric ||x|| = distance from x to the nearest integer, and the
// runner objective f_D(x) = min_{d in D} ||x d||, both in exact rationals.
// Also the closed-form lower bounds on kappa(k) = inf over |D| = k.

#include <cstdint>
#include <stdexcept>

#include "lonerun/primes.hpp"
#include "lonerun/rational.hpp"
#include "lonerun/speed_set.hpp"

namespace lonerun {

// ||x|| = min({x}, 1 - {x}) in [0, 1/2]
template <class Int>
basic_rational<Int> circ_dist(const basic_rational<Int>& x) {
  auto f = x.frac();
  auto g = basic_rational<Int>(1) - f;
  return f <= g ? f : g;
}

template <class Int>
basic_rational<Int> min_circ_dist(const speed_set& D, const basic_rational<Int>& x) {
  if (D.empty()) throw std::invalid_argument("min_circ_dist: empty speed set");
  bool first = true;
  basic_rational<Int> best;
  for (std::uint64_t d : D) {
    auto v = circ_dist(x * basic_rational<Int>(Int(d)));
    if (first || v < best) {
      best = v;
      first = false;
    }
  }
  return best;
}

// Best known general lower bound on kappa over all k-sets:
//   1/(2k) always; (2k-3)/(4(k-1)^2) for k >= 5; 1/(2k-3) for k >= 4 when
//   2k-3 is prime. Returns the max of whichever apply.
inline rational known_lower_bound(std::uint32_t k) {
  if (k == 0) throw std::invalid_argument("known_lower_bound: k must be positive");
  rational best(1, int128(2) * k);
  if (k >= 5) {
    rational chen(int128(2) * k - 3, int128(4) * (k - 1) * (k - 1));
    if (chen > best) best = chen;
  }
  if (k >= 4 && is_prime(2ull * k - 3)) {
    rational prime_case(1, int128(2) * k - 3);
    if (prime_case > best) best = prime_case;
  }
  return best;
}

// The conjectured optimum 1/(k+1), attained by D = {1, ..., k}.
inline rational conjectured_bound(std::uint32_t k) {
  if (k == 0) throw std::invalid_argument("conjectured_bound: k must be positive");
  return rational(1, int128(k) + 1);
}

}  // namespace lonerun
