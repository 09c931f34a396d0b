#pragma once

// Arbitrary-precision aliases. Kept in a separate header so the hot paths
// don't pay the boost include unless they need it.

#include <boost/multiprecision/cpp_int.hpp>

#include "lonerun/rational.hpp"

namespace lonerun {

using bigint = boost::multiprecision::cpp_int;
using big_rational = basic_rational<bigint>;

inline bigint big_pow(bigint base, unsigned exp) {
  bigint out = 1;
  while (exp > 0) {
    if (exp & 1u) out *= base;
    base *= base;
    exp >>= 1;
  }
  return out;
}

inline big_rational widen(const rational& r) {
  return big_rational(bigint(r.num()), bigint(r.den()));
}

}  // namespace lonerun
