#pragma once

// Discrete Fourier analysis on Z_p with the convention
//   fhat(r) = sum_{x in Z_p} f(x) e^{2 pi i r x / p}.
// Under it: fhat(0) is the plain sum, real input gives conjugate symmetry
// fhat(p - r) = conj(fhat(r)), inversion is f(x) = (1/p) sum_r fhat(r)
// e^{-2 pi i r x / p}, and pointwise products transform convolutions
//   (f * g)(y) = sum_x f(x) g(y - x)  =>  hat(f * g) = fhat * ghat.
//
// The transform is the naive O(p^2) sum against a precomputed root table —
// deliberately simple, exact-index (r x mod p), and fast enough for the
// p <= 10^4 range this laboratory works in.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "lonerun/primes.hpp"

namespace lonerun {

struct spectrum_table {
  std::uint64_t p = 0;
  std::vector<std::complex<double>> values;  // indexed by frequency r in [0, p)
};

namespace detail {

inline std::vector<std::complex<double>> unit_roots(std::uint64_t p) {
  std::vector<std::complex<double>> w(p);
  for (std::uint64_t j = 0; j < p; ++j) {
    double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(p);
    w[j] = std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return w;
}

}  // namespace detail

inline spectrum_table dft(std::span<const std::complex<double>> f, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("dft: p must be prime");
  if (f.size() != p) throw std::invalid_argument("dft: input length must equal p");
  auto w = detail::unit_roots(p);
  spectrum_table out;
  out.p = p;
  out.values.assign(p, {0.0, 0.0});
  for (std::uint64_t r = 0; r < p; ++r) {
    std::complex<double> acc{0.0, 0.0};
    for (std::uint64_t x = 0; x < p; ++x) acc += f[x] * w[(r * x) % p];
    out.values[r] = acc;
  }
  return out;
}

inline spectrum_table dft_real(std::span<const double> f, std::uint64_t p) {
  std::vector<std::complex<double>> c(f.begin(), f.end());
  return dft(c, p);
}

inline spectrum_table dft_counts(std::span<const std::int64_t> f, std::uint64_t p) {
  std::vector<std::complex<double>> c(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) c[i] = static_cast<double>(f[i]);
  return dft(c, p);
}

inline std::vector<std::complex<double>> inverse_dft(const spectrum_table& S) {
  const std::uint64_t p = S.p;
  if (S.values.size() != p) throw std::invalid_argument("inverse_dft: malformed table");
  auto w = detail::unit_roots(p);
  std::vector<std::complex<double>> f(p, {0.0, 0.0});
  for (std::uint64_t x = 0; x < p; ++x) {
    std::complex<double> acc{0.0, 0.0};
    for (std::uint64_t r = 0; r < p; ++r) acc += S.values[r] * std::conj(w[(r * x) % p]);
    f[x] = acc / static_cast<double>(p);
  }
  return f;
}

// Spectrum of the indicator of the interval {s, s+1, ..., l} at a nonzero
// frequency r, in closed form:
//   Ahat(r) = e^{i pi r (s + l) / p} * sin(pi r n / p) / sin(pi r / p),
// with n = l - s + 1 points. (At r = 0 the value is simply n; this function
// rejects r = 0 so the caller never confuses the two.) Angles are reduced
// mod 2p before evaluation so large arguments lose no precision.
inline std::complex<double> interval_coeff(std::uint64_t s, std::uint64_t l, std::uint64_t r,
                                           std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("interval_coeff: p must be prime");
  if (s > l || l >= p) throw std::invalid_argument("interval_coeff: need 0 <= s <= l < p");
  if (r % p == 0) throw std::invalid_argument("interval_coeff: r must be nonzero mod p");
  r %= p;
  const std::uint64_t n = l - s + 1;
  const double pi = std::numbers::pi;
  const double dp = static_cast<double>(p);
  auto reduced = [&](uint128 m) { return static_cast<double>(m % (2 * p)); };
  double num = std::sin(pi * reduced(uint128(r) * n) / dp);
  double den = std::sin(pi * static_cast<double>(r) / dp);
  double phase = pi * reduced(uint128(r) * (s + l)) / dp;
  return std::polar(num / den, phase);
}

}  // namespace lonerun
