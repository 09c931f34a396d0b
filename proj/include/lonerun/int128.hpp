#pragma once

// 128-bit integer helpers. The exact-arithmetic layers below use __int128 as
// the default word; everything that can overflow goes through the checked_*
// wrappers, which throw std::overflow_error instead of wrapping.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace lonerun {

using int128 = __int128;
using uint128 = unsigned __int128;

inline std::string to_string(uint128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

inline std::string to_string(int128 v) {
  // uint128(0) - uint128(v) is well defined even for the most negative value
  if (v < 0) return "-" + to_string(uint128(0) - static_cast<uint128>(v));
  return to_string(static_cast<uint128>(v));
}

template <class I>
inline I checked_add(I a, I b) {
  if constexpr (std::is_same_v<I, int128> || std::is_same_v<I, std::int64_t>) {
    I r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer add overflow");
    return r;
  } else {
    return a + b;
  }
}

template <class I>
inline I checked_sub(I a, I b) {
  if constexpr (std::is_same_v<I, int128> || std::is_same_v<I, std::int64_t>) {
    I r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer sub overflow");
    return r;
  } else {
    return a - b;
  }
}

template <class I>
inline I checked_mul(I a, I b) {
  if constexpr (std::is_same_v<I, int128> || std::is_same_v<I, std::int64_t>) {
    I r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer mul overflow");
    return r;
  } else {
    return a * b;
  }
}

template <class I>
inline I checked_neg(I a) {
  if constexpr (std::is_same_v<I, int128> || std::is_same_v<I, std::int64_t>) {
    return checked_sub(I(0), a);
  } else {
    return -a;
  }
}

// gcd on any signed integer-like type (works for __int128 and cpp_int alike;
// std::gcd rejects __int128 under some library configs).
template <class I>
inline I int_gcd(I a, I b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    I t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace lonerun
