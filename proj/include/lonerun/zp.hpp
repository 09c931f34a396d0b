#pragma once

// L-independence over Z_p. A set D = {d_1, ..., d_k} of nonzero residues is
// L-independent when no nonzero integer vector (x_1, ..., x_k) with
// sum_i ||x_i||_p <= L satisfies sum_i d_i x_i = 0 (mod p), where
// ||a||_p = min(a mod p, p - a mod p). For L < p/2 each coefficient can be
// taken as its signed representative in [-L, L], which is how the search
// below enumerates.
//
// Enumeration order (pinned, so reported witnesses are reproducible): each
// coordinate runs through 0, 1, -1, 2, -2, ... within the remaining L1
// budget, lexicographically across coordinates. The first violating vector
// found in that order is the witness.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lonerun/int128.hpp"
#include "lonerun/primes.hpp"
#include "lonerun/rational.hpp"
#include "lonerun/rng.hpp"
#include "lonerun/speed_set.hpp"

namespace lonerun {

// ||a||_p: circular distance of the residue a from 0
inline std::uint64_t norm_p(std::uint64_t a, std::uint64_t p) {
  if (p < 2 || !is_prime(p)) throw std::invalid_argument("norm_p: p must be prime");
  a %= p;
  return a <= p - a ? a : p - a;
}

struct independence_report {
  std::uint64_t p = 0;
  std::uint32_t L = 0;
  bool independent = false;
  std::optional<std::vector<std::int64_t>> witness;  // first violating vector
  std::uint64_t vectors_checked = 0;                 // nonzero vectors evaluated
};

namespace detail {

struct ball_search {
  const std::vector<std::uint64_t>& pos_step;  // d_i mod p
  const std::vector<std::uint64_t>& neg_step;  // p - d_i mod p
  std::uint64_t p;
  std::uint32_t k;
  std::vector<std::int64_t> coeff;
  std::vector<std::int64_t> witness;
  std::uint64_t checked = 0;

  // returns true when a violating vector has been found
  bool run(std::uint32_t pos, std::uint32_t budget, std::uint64_t sum, bool nonzero) {
    if (pos == k) {
      if (!nonzero) return false;
      ++checked;
      if (sum == 0) {
        witness = coeff;
        return true;
      }
      return false;
    }
    // value 0 first, then 1, -1, 2, -2, ...
    coeff[pos] = 0;
    if (run(pos + 1, budget, sum, nonzero)) return true;
    for (std::uint32_t v = 1; v <= budget; ++v) {
      coeff[pos] = static_cast<std::int64_t>(v);
      std::uint64_t s_pos = static_cast<std::uint64_t>((sum + uint128(v) * pos_step[pos]) % p);
      if (run(pos + 1, budget - v, s_pos, true)) return true;
      coeff[pos] = -static_cast<std::int64_t>(v);
      std::uint64_t s_neg = static_cast<std::uint64_t>((sum + uint128(v) * neg_step[pos]) % p);
      if (run(pos + 1, budget - v, s_neg, true)) return true;
    }
    coeff[pos] = 0;
    return false;
  }
};

}  // namespace detail

// Decides L-independence of D mod p by exhausting the signed L1 ball.
// Rejects 2L >= p (signed representatives would stop being faithful) and any
// speed that is 0 or repeated mod p.
inline independence_report is_L_independent(const speed_set& D, std::uint64_t p, std::uint32_t L) {
  if (D.empty()) throw std::invalid_argument("is_L_independent: empty speed set");
  if (!is_prime(p)) throw std::invalid_argument("is_L_independent: p must be prime");
  if (2ull * L >= p)
    throw std::domain_error("is_L_independent: requires L < p/2");
  const std::uint32_t k = static_cast<std::uint32_t>(D.size());
  std::vector<std::uint64_t> pos_step(k), neg_step(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    std::uint64_t r = D[i] % p;
    if (r == 0) throw std::invalid_argument("is_L_independent: speed divisible by p");
    for (std::uint32_t j = 0; j < i; ++j)
      if (pos_step[j] == r) throw std::invalid_argument("is_L_independent: speeds collide mod p");
    pos_step[i] = r;
    neg_step[i] = p - r;
  }
  detail::ball_search search{pos_step, neg_step, p, k, std::vector<std::int64_t>(k), {}, 0};
  bool violated = search.run(0, L, 0, false);
  independence_report rep;
  rep.p = p;
  rep.L = L;
  rep.independent = !violated;
  rep.vectors_checked = search.checked;
  if (violated) rep.witness = search.witness;
  return rep;
}

// Exhaustive count of L-dependent k-subsets of {1, ..., p-1}. Guarded to
// binom(p-1, k) <= 10^7 subsets.
inline std::uint64_t count_dependent_subsets(std::uint64_t p, std::uint32_t k, std::uint32_t L) {
  if (!is_prime(p)) throw std::invalid_argument("count_dependent_subsets: p must be prime");
  if (k == 0 || k > p - 1) throw std::invalid_argument("count_dependent_subsets: bad k");
  if (2ull * L >= p) throw std::domain_error("count_dependent_subsets: requires L < p/2");
  uint128 total = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    total = total * (p - 1 - i) / (i + 1);  // exact: prefix products of C(n, i+1)
    if (total > 10'000'000) throw std::domain_error("count_dependent_subsets: more than 1e7 subsets");
  }
  std::vector<std::uint64_t> sub(k);
  for (std::uint32_t i = 0; i < k; ++i) sub[i] = i + 1;
  std::uint64_t dependent = 0;
  while (true) {
    if (!is_L_independent(speed_set(sub), p, L).independent) ++dependent;
    // next k-combination of {1, ..., p-1} in lexicographic order
    std::int64_t i = static_cast<std::int64_t>(k) - 1;
    while (i >= 0 && sub[static_cast<std::size_t>(i)] == p - k + static_cast<std::uint64_t>(i)) --i;
    if (i < 0) break;
    ++sub[static_cast<std::size_t>(i)];
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < k; ++j) sub[j] = sub[j - 1] + 1;
  }
  return dependent;
}

// Upper bound on the number of L-dependent k-subsets: each nonzero vector in
// the L1 ball rules out at most C(p-1, k-1) subsets, and there are fewer than
// (2L+1)^k such vectors. Exact in 128 bits or throws.
inline int128 dependent_count_bound(std::uint64_t p, std::uint32_t k, std::uint32_t L) {
  if (k == 0 || k > p - 1) throw std::invalid_argument("dependent_count_bound: bad k");
  int128 pw = 1;
  for (std::uint32_t i = 0; i < k; ++i) pw = checked_mul(pw, int128(2ull * L + 1));
  int128 binom = 1;
  for (std::uint32_t i = 0; i + 1 < k; ++i)
    binom = checked_mul(binom, int128(p - 1 - i)) / int128(i + 1);
  return checked_mul(pw, binom);
}

// Fraction form of the same bound: (2L+1)^k * k / (p - k).
inline rational dependent_fraction_bound(std::uint64_t p, std::uint32_t k, std::uint32_t L) {
  if (k == 0 || k >= p) throw std::invalid_argument("dependent_fraction_bound: need 0 < k < p");
  int128 pw = 1;
  for (std::uint32_t i = 0; i < k; ++i) pw = checked_mul(pw, int128(2ull * L + 1));
  return rational(checked_mul(pw, int128(k)), int128(p - k));
}

struct independence_sample {
  std::uint64_t p = 0;
  std::uint32_t k = 0;
  std::uint32_t L = 0;
  std::uint64_t trials = 0;
  std::uint64_t independent_count = 0;
  double fraction = 0.0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
};

// Monte-Carlo estimate of the independent fraction among uniform k-subsets of
// {1, ..., p-1}. Each trial gets its own derived seed, so results do not
// depend on evaluation order.
inline independence_sample sample_independent_fraction(std::uint64_t p, std::uint32_t k,
                                                       std::uint32_t L, std::uint64_t trials,
                                                       std::uint64_t seed) {
  if (!is_prime(p)) throw std::invalid_argument("sample_independent_fraction: p must be prime");
  if (k == 0 || k > p - 1) throw std::invalid_argument("sample_independent_fraction: bad k");
  if (trials == 0) throw std::invalid_argument("sample_independent_fraction: need trials >= 1");
  if (2ull * L >= p) throw std::domain_error("sample_independent_fraction: requires L < p/2");
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto subset = sample_k_subset(p - 1, k, derive_seed(seed, p, t));
    if (is_L_independent(speed_set(subset), p, L).independent) ++hits;
  }
  independence_sample out;
  out.p = p;
  out.k = k;
  out.L = L;
  out.trials = trials;
  out.independent_count = hits;
  out.fraction = static_cast<double>(hits) / static_cast<double>(trials);
  out.std_error = std::sqrt(out.fraction * (1.0 - out.fraction) / static_cast<double>(trials));
  out.seed = seed;
  return out;
}

}  // namespace lonerun
