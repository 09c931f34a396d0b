#pragma once

// Spectral loneliness certificates. The pipeline, all exact until the final
// optional spectral cross-check:
//
//   arc     C = { x in Z_p : (1/4 - eps/2) p < x < (1/4 + eps/2) p }, so that
//           x in C and t d = x + x' with x, x' in C force ||t d / p|| to lie
//           within eps/2-ish of 1/2 — concretely t d / p in (1/2 - eps, 1/2 + eps).
//   window  B = C * C (self-convolution, exact integer counts).
//   count   I = sum_t prod_i B(t d_i): every t with a nonzero term is a time
//           at which all runners are at distance > 1/2 - eps ... i.e. a
//           witness that kappa(D) >= 1/2 - eps.
//   spectra p^{k-1} I = sum over frequency vectors r with sum r_i d_i = 0
//           (mod p) of prod_i Bhat(r_i) — the identity the independence
//           threshold is built to exploit: if D is L-independent for L above
//           sqrt(k^3 3^{k-1} / (2^{k+1} eps^{2k})), the r = 0 main term
//           dominates and I > 0.
//
// The positivity conclusion is only *licensed* when the main term provably
// beats the tail with the integer arc actually constructed, i.e. when
//   |C|^{2k} * 2^{k+1} * L^2 > k^3 * p^{2k} * 3^{k-1}
// (exact big-integer check). Certified sets whose licensed count comes out
// zero indicate a bug and raise; an unlicensed zero is recorded as a
// diagnostic, nothing more.

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lonerun/big.hpp"
#include "lonerun/fourier.hpp"
#include "lonerun/kappa.hpp"
#include "lonerun/primes.hpp"
#include "lonerun/rational.hpp"
#include "lonerun/speed_set.hpp"
#include "lonerun/zp.hpp"

namespace lonerun {

struct arc_set {
  std::uint64_t p = 0;
  rational epsilon;
  std::int64_t lo = 1;  // inclusive; empty arc has lo > hi
  std::int64_t hi = 0;

  std::uint64_t size() const {
    return hi >= lo ? static_cast<std::uint64_t>(hi - lo + 1) : 0;
  }
  bool contains(std::uint64_t x) const {
    return hi >= lo && x >= static_cast<std::uint64_t>(lo) && x <= static_cast<std::uint64_t>(hi);
  }
  std::vector<std::int64_t> indicator() const {
    std::vector<std::int64_t> f(p, 0);
    for (std::int64_t x = lo; x <= hi; ++x) f[static_cast<std::size_t>(x)] = 1;
    return f;
  }
};

// The open arc around p/4 of half-width (eps/2) p, intersected with Z:
// lo = floor(p(1/4 - eps/2)) + 1, hi = ceil(p(1/4 + eps/2)) - 1. Both strict,
// both exact. Never wraps: 0 < lo and hi < p/2 for eps in (0, 1/2).
inline arc_set arc_set_C(std::uint64_t p, const rational& epsilon) {
  if (!is_prime(p)) throw std::invalid_argument("arc_set_C: p must be prime");
  if (!(rational(0) < epsilon && epsilon < rational(1, 2)))
    throw std::invalid_argument("arc_set_C: epsilon must lie in (0, 1/2)");
  const int128 a = epsilon.num(), b = epsilon.den();
  const int128 P = int128(p);
  // strict inequality x > p(b - 2a)/(4b): smallest such integer is floor + 1
  int128 lo_num = P * (b - 2 * a);
  int128 lo = lo_num / (4 * b) + 1;  // lo_num >= 0, truncation is floor
  // strict x < p(b + 2a)/(4b): largest integer strictly below is ceil - 1,
  // i.e. floor((num - 1) / den) for positive num
  int128 hi_num = P * (b + 2 * a);
  int128 hi = (hi_num - 1) / (4 * b);
  arc_set C;
  C.p = p;
  C.epsilon = epsilon;
  C.lo = static_cast<std::int64_t>(lo);
  C.hi = static_cast<std::int64_t>(hi);
  return C;
}

// B = C * C as exact counts, B(y) = #{(x, x') in C^2 : x + x' = y mod p}.
// For a contiguous arc the count is the overlap length of two integer
// intervals, computed in closed form (no wrap: 2 hi < p).
inline std::vector<std::int64_t> self_convolution(const arc_set& C) {
  std::vector<std::int64_t> B(C.p, 0);
  if (C.size() == 0) return B;
  for (std::int64_t y = 2 * C.lo; y <= 2 * C.hi; ++y) {
    std::int64_t lo = std::max(C.lo, y - C.hi);
    std::int64_t hi = std::min(C.hi, y - C.lo);
    if (hi >= lo) B[static_cast<std::size_t>(y) % C.p] = hi - lo + 1;
  }
  return B;
}

struct lonely_count {
  uint128 I = 0;                        // sum over t of prod_i B(t d_i)
  std::vector<std::uint64_t> witnesses; // all t with a positive product
};

// Direct evaluation of I. Quadratic in nothing — O(p k) once B is built.
inline lonely_count lonely_count_direct(const speed_set& D, std::uint64_t p,
                                        const rational& epsilon) {
  if (D.empty()) throw std::invalid_argument("lonely_count_direct: empty speed set");
  auto C = arc_set_C(p, epsilon);
  auto B = self_convolution(C);
  std::vector<std::uint64_t> res(D.size());
  for (std::size_t i = 0; i < D.size(); ++i) {
    res[i] = D[i] % p;
    if (res[i] == 0)
      throw std::invalid_argument("lonely_count_direct: speed divisible by p");
  }
  lonely_count out;
  for (std::uint64_t t = 0; t < p; ++t) {
    uint128 prod = 1;
    for (std::size_t i = 0; i < D.size(); ++i) {
      std::uint64_t pos = static_cast<std::uint64_t>((uint128(t) * res[i]) % p);
      std::int64_t b = B[pos];
      if (b == 0) {
        prod = 0;
        break;
      }
      uint128 nb = prod * static_cast<uint128>(b);
      if (nb / static_cast<uint128>(b) != prod)
        throw std::overflow_error("lonely_count_direct: product exceeds 128 bits");
      prod = nb;
    }
    if (prod != 0) {
      out.witnesses.push_back(t);
      uint128 ni = out.I + prod;
      if (ni < out.I) throw std::overflow_error("lonely_count_direct: count exceeds 128 bits");
      out.I = ni;
    }
  }
  return out;
}

// The same count through the spectral identity
//   I = p^{1-k} * sum_{r_1..r_k : sum r_i d_i = 0 mod p} prod_i Bhat(r_i),
// enumerating the solution variety by free choice of r_1..r_{k-1} and
// r_k = -d_k^{-1} sum_{i<k} d_i r_i. Floating point, O(p^{k-1} k) — guarded
// to k <= 3 and p <= 500 where it is both fast and well-conditioned.
inline double lonely_count_spectral(const speed_set& D, std::uint64_t p, const rational& epsilon) {
  if (D.empty()) throw std::invalid_argument("lonely_count_spectral: empty speed set");
  if (D.size() > 3 || p > 500)
    throw std::domain_error("lonely_count_spectral: guarded to k <= 3 and p <= 500");
  auto C = arc_set_C(p, epsilon);
  auto B = self_convolution(C);
  auto Bhat = dft_counts(B, p);
  std::vector<std::uint64_t> res(D.size());
  for (std::size_t i = 0; i < D.size(); ++i) {
    res[i] = D[i] % p;
    if (res[i] == 0)
      throw std::invalid_argument("lonely_count_spectral: speed divisible by p");
  }
  const std::size_t k = D.size();
  const std::uint64_t dk_inv = invmod_prime(res[k - 1], p);
  std::complex<double> acc{0.0, 0.0};
  if (k == 1) {
    acc = Bhat.values[0];
  } else if (k == 2) {
    for (std::uint64_t r1 = 0; r1 < p; ++r1) {
      std::uint64_t r2 = mulmod_u64((p - mulmod_u64(r1, res[0], p)) % p, dk_inv, p);
      acc += Bhat.values[r1] * Bhat.values[r2];
    }
  } else {
    for (std::uint64_t r1 = 0; r1 < p; ++r1) {
      for (std::uint64_t r2 = 0; r2 < p; ++r2) {
        std::uint64_t s = (mulmod_u64(r1, res[0], p) + mulmod_u64(r2, res[1], p)) % p;
        std::uint64_t r3 = mulmod_u64((p - s) % p, dk_inv, p);
        acc += Bhat.values[r1] * Bhat.values[r2] * Bhat.values[r3];
      }
    }
  }
  double scale = 1.0;
  for (std::size_t i = 1; i < k; ++i) scale *= static_cast<double>(p);
  return acc.real() / scale;
}

struct threshold_info {
  big_rational radicand;   // k^3 3^{k-1} / (2^{k+1} eps^{2k}), reduced
  double root;             // sqrt of the radicand, for display only
  bigint minimal_L;        // least integer L with L^2 > radicand
};

// The independence budget demanded by the positivity argument. Exact: the
// radicand is a big rational, minimal_L is found by integer square root.
inline threshold_info independence_threshold(std::uint32_t k, const rational& epsilon) {
  if (k == 0) throw std::invalid_argument("independence_threshold: k must be positive");
  if (!(rational(0) < epsilon && epsilon < rational(1, 2)))
    throw std::invalid_argument("independence_threshold: epsilon must lie in (0, 1/2)");
  bigint a(epsilon.num()), b(epsilon.den());
  bigint num = bigint(k) * k * k * big_pow(3, k - 1) * big_pow(b, 2 * k);
  bigint den = big_pow(2, k + 1) * big_pow(a, 2 * k);
  threshold_info out;
  out.radicand = big_rational(num, den);
  out.root = std::sqrt(out.radicand.to_double());
  bigint q = out.radicand.num() / out.radicand.den();
  bigint L = boost::multiprecision::sqrt(q);  // integer floor sqrt
  while (L > 0 && L * L * out.radicand.den() > out.radicand.num()) --L;
  while (L * L * out.radicand.den() <= out.radicand.num()) ++L;
  out.minimal_L = L;
  return out;
}

struct certificate_result {
  std::uint64_t p = 0;
  rational epsilon;
  speed_set D;
  big_rational threshold_radicand;
  double threshold_root = 0.0;
  std::uint64_t L_used = 0;
  independence_report independence;
  bool certified = false;          // independent at the required budget
  std::uint64_t arc_size = 0;
  bool positivity_licensed = false;  // main term provably beats the tail
  std::optional<uint128> lonely_I;   // direct count, when run
  std::optional<std::uint64_t> witness_t;
  std::optional<kappa_result> kappa_check;
};

// Runs the whole pipeline for one (D, p, eps). cross_check additionally
// computes kappa(D) exactly and the direct count I; a certified set whose
// exact kappa falls below 1/2 - eps (or whose licensed count is zero) is a
// soundness bug and raises logic_error.
inline certificate_result certify_kappa(const speed_set& D, std::uint64_t p,
                                        const rational& epsilon, bool cross_check = true) {
  if (D.empty()) throw std::invalid_argument("certify_kappa: empty speed set");
  if (!is_prime(p)) throw std::invalid_argument("certify_kappa: p must be prime");
  if (D.max_speed() >= p || D[0] < 1)
    throw std::invalid_argument("certify_kappa: speeds must lie in {1, ..., p-1}");
  const std::uint32_t k = static_cast<std::uint32_t>(D.size());

  certificate_result out;
  out.p = p;
  out.epsilon = epsilon;
  out.D = D;

  auto th = independence_threshold(k, epsilon);
  out.threshold_radicand = th.radicand;
  out.threshold_root = th.root;
  if (2 * th.minimal_L >= p)
    throw std::domain_error("certify_kappa: required budget L >= p/2; increase p");
  if (th.minimal_L > bigint(0xffffffffull))
    throw std::domain_error("certify_kappa: required budget L exceeds 2^32");
  out.L_used = static_cast<std::uint64_t>(th.minimal_L);

  out.independence = is_L_independent(D, p, static_cast<std::uint32_t>(out.L_used));
  out.certified = out.independence.independent;

  auto C = arc_set_C(p, epsilon);
  out.arc_size = C.size();

  // |C|^{2k} * 2^{k+1} * L^2 > k^3 * p^{2k} * 3^{k-1}, all exact
  bigint lhs = big_pow(bigint(out.arc_size), 2 * k) * big_pow(2, k + 1) * bigint(out.L_used) *
               bigint(out.L_used);
  bigint rhs = bigint(k) * k * k * big_pow(bigint(p), 2 * k) * big_pow(3, k - 1);
  out.positivity_licensed = lhs > rhs;

  if (cross_check) {
    out.kappa_check = kappa_exact(D);
    rational floor_val = rational(1, 2) - epsilon;
    if (out.certified && out.kappa_check->value < floor_val)
      throw std::logic_error("certify_kappa: certified set has kappa below 1/2 - eps");
    auto lc = lonely_count_direct(D, p, epsilon);
    out.lonely_I = lc.I;
    if (!lc.witnesses.empty()) out.witness_t = lc.witnesses.front();
    if (out.certified && out.positivity_licensed && lc.I == 0)
      throw std::logic_error("certify_kappa: licensed certificate with zero count");
  }
  return out;
}

}  // namespace lonerun
