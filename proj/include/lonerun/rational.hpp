#pragma once

// Exact rational arithmetic. basic_rational<Int> is always stored gcd-reduced
// with a positive denominator; every operation is exact or throws — nothing
// here ever rounds. The default word is __int128 (checked, throws
// std::overflow_error); instantiate with boost::multiprecision::cpp_int via
// big.hpp when values can outgrow 128 bits.

#include <concepts>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lonerun/int128.hpp"

namespace lonerun {

namespace detail {

template <class Int>
std::string int_to_string(const Int& v) {
  if constexpr (std::is_same_v<Int, int128>) {
    return lonerun::to_string(v);
  } else {
    return v.str();  // multiprecision types carry their own formatter
  }
}

}  // namespace detail

template <class Int>
class basic_rational {
 public:
  basic_rational() : num_(0), den_(1) {}

  basic_rational(Int n) : num_(std::move(n)), den_(1) {}

  template <std::integral J>
    requires(!std::is_same_v<J, Int>)
  basic_rational(J n) : num_(n), den_(1) {}

  basic_rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  basic_rational operator-() const {
    basic_rational r;
    r.num_ = checked_neg(num_);
    r.den_ = den_;
    return r;
  }

  friend basic_rational operator+(const basic_rational& a, const basic_rational& b) {
    // a/b + c/d over lcm(b,d); pre-dividing by g keeps intermediates small
    Int g = int_gcd(a.den_, b.den_);
    Int bd = b.den_ / g;
    Int ad = a.den_ / g;
    Int n = checked_add(checked_mul(a.num_, bd), checked_mul(b.num_, ad));
    Int d = checked_mul(a.den_, bd);
    return basic_rational(std::move(n), std::move(d));
  }

  friend basic_rational operator-(const basic_rational& a, const basic_rational& b) {
    Int g = int_gcd(a.den_, b.den_);
    Int bd = b.den_ / g;
    Int ad = a.den_ / g;
    Int n = checked_sub(checked_mul(a.num_, bd), checked_mul(b.num_, ad));
    Int d = checked_mul(a.den_, bd);
    return basic_rational(std::move(n), std::move(d));
  }

  friend basic_rational operator*(const basic_rational& a, const basic_rational& b) {
    Int g1 = int_gcd(a.num_, b.den_);
    Int g2 = int_gcd(b.num_, a.den_);
    Int an = a.num_ / g1;
    Int bn = b.num_ / g2;
    Int ad = a.den_ / g2;
    Int bd = b.den_ / g1;
    basic_rational r;
    r.num_ = checked_mul(an, bn);
    r.den_ = checked_mul(ad, bd);
    return r;  // already reduced; sign already on the numerator
  }

  friend basic_rational operator/(const basic_rational& a, const basic_rational& b) {
    if (b.num_ == 0) throw std::invalid_argument("rational: division by zero");
    return a * b.reciprocal();
  }

  basic_rational reciprocal() const {
    if (num_ == 0) throw std::invalid_argument("rational: reciprocal of zero");
    basic_rational r;
    if (num_ < 0) {
      r.num_ = checked_neg(den_);
      r.den_ = checked_neg(num_);
    } else {
      r.num_ = den_;
      r.den_ = num_;
    }
    return r;
  }

  basic_rational abs() const { return num_ < 0 ? -*this : *this; }

  // cross-multiplied exact comparison
  friend int cmp(const basic_rational& a, const basic_rational& b) {
    Int lhs = checked_mul(a.num_, b.den_);
    Int rhs = checked_mul(b.num_, a.den_);
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
  }

  friend bool operator==(const basic_rational& a, const basic_rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const basic_rational& a, const basic_rational& b) { return !(a == b); }
  friend bool operator<(const basic_rational& a, const basic_rational& b) { return cmp(a, b) < 0; }
  friend bool operator>(const basic_rational& a, const basic_rational& b) { return cmp(a, b) > 0; }
  friend bool operator<=(const basic_rational& a, const basic_rational& b) { return cmp(a, b) <= 0; }
  friend bool operator>=(const basic_rational& a, const basic_rational& b) { return cmp(a, b) >= 0; }

  // floor(num/den) with the Euclidean convention (remainder in [0, den))
  Int floor() const {
    Int q = num_ / den_;
    Int r = num_ % den_;
    if (r < 0) q -= 1;
    return q;
  }

  // fractional part {x} in [0, 1); stays reduced because gcd(num mod den, den) = gcd(num, den)
  basic_rational frac() const {
    Int r = num_ % den_;
    if (r < 0) r += den_;
    basic_rational out;
    out.num_ = std::move(r);
    out.den_ = den_;
    return out;
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // canonical form is always "num/den", including integers ("3/1")
  std::string to_string() const {
    return detail::int_to_string(num_) + "/" + detail::int_to_string(den_);
  }

  // accepts "n" or "n/d" with optional leading minus on either part
  static basic_rational parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
      return basic_rational(parse_int(s));
    }
    Int n = parse_int(s.substr(0, slash));
    Int d = parse_int(s.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("rational: zero denominator in '" + std::string(s) + "'");
    return basic_rational(std::move(n), std::move(d));
  }

 private:
  void normalize() {
    if (den_ == 0) throw std::invalid_argument("rational: zero denominator");
    if (den_ < 0) {
      num_ = checked_neg(num_);
      den_ = checked_neg(den_);
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    Int g = int_gcd(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  static Int parse_int(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("rational: empty integer token");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
      neg = (s[0] == '-');
      i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("rational: bare sign in numeric token");
    Int v = 0;
    for (; i < s.size(); ++i) {
      char c = s[i];
      if (c < '0' || c > '9')
        throw std::invalid_argument("rational: bad digit in '" + std::string(s) + "'");
      v = checked_add(checked_mul(v, Int(10)), Int(c - '0'));
    }
    return neg ? checked_neg(v) : v;
  }

  Int num_;
  Int den_;
};

using rational = basic_rational<int128>;

// ceil(1/x) for x in (0, 1]; used for interval counts ceil(1/kappa)
template <class Int>
Int ceil_reciprocal(const basic_rational<Int>& x) {
  if (x.num() <= 0) throw std::invalid_argument("ceil_reciprocal: requires x > 0");
  return (x.den() + x.num() - 1) / x.num();
}

template <class To, class From>
basic_rational<To> rational_cast(const basic_rational<From>& r) {
  return basic_rational<To>(static_cast<To>(r.num()), static_cast<To>(r.den()));
}

}  // namespace lonerun
