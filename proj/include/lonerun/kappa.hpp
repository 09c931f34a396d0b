#pragma once

// Exact computation of kappa(D) = sup_x min_{d in D} ||x d||.
//
// f_D is continuous and piecewise linear with slopes +-d, so its sup is
// attained at finitely many breakpoint candidates:
//   * peaks of a single runner:      x = (2m+1) / (2 d_i)
//   * crossings of two runners:      x = m / (d_i + d_j)   (opposite slopes)
//   * same-direction crossings:      x = m / (d_j - d_i)
// Opposite-slope crossings plus peaks already cover every local maximum; the
// difference family is kept for completeness (it costs little and makes the
// candidate list the full breakpoint set of all pairwise distance functions).
//
// Everything is exact integer arithmetic. At a candidate x = a/q the runner
// distances are min(r, q - r)/q with r = a*d mod q, compared by 128-bit
// cross-multiplication. With speeds capped at 2^62 (speed_set invariant) the
// largest product is (2 d_max)^2 < 2^126, so the wide path is exact for the
// whole admissible range. The fast path keeps products in 64 bits, which is
// valid while 2 d_max^2 < 2^64, i.e. d_max <= 10^9 comfortably; kappa_exact
// guards on that and kappa_exact_wide lifts it.
//
// Candidates inside a family are visited by stepping residues (one add and a
// conditional subtract per runner per candidate), so the hot loop has no
// division at all.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lonerun/rational.hpp"
#include "lonerun/speed_set.hpp"

namespace lonerun {

struct kappa_result {
  rational value;
  rational witness;                     // smallest maximizing time in [0, 1)
  std::uint64_t candidates_evaluated;
};

inline constexpr std::uint64_t kKappaFastMaxSpeed = 1'000'000'000ull;

namespace detail {

enum class family_kind : std::uint8_t { peak = 0, sum = 1, diff = 2 };

struct candidate_family {
  std::uint64_t den;    // candidate denominators (2d_i, d_i+d_j, d_j-d_i)
  std::uint64_t start;  // first numerator
  std::uint64_t stride; // numerator step (2 for peaks, 1 otherwise)
  family_kind kind;
  std::uint32_t skip;   // runner whose distance is implied (duplicate), or k
};

// skip indices are sound because at peak points runner i sits exactly at 1/2,
// and at crossing points m/(d_i +- d_j) the two runners have equal distance
// (d_j = -+ d_i mod den). With k == 1 nothing may be skipped.
inline std::vector<candidate_family> candidate_families(const speed_set& D) {
  const std::uint32_t k = static_cast<std::uint32_t>(D.size());
  std::vector<candidate_family> fams;
  fams.reserve(k + k * (k - 1));
  for (std::uint32_t i = 0; i < k; ++i) {
    fams.push_back({2 * D[i], 1, 2, family_kind::peak, k == 1 ? k : i});
  }
  for (std::uint32_t i = 0; i < k; ++i) {
    for (std::uint32_t j = i + 1; j < k; ++j) {
      fams.push_back({D[i] + D[j], 1, 1, family_kind::sum, j});
      if (D[j] - D[i] >= 2)  // den 1 has no interior numerators
        fams.push_back({D[j] - D[i], 1, 1, family_kind::diff, j});
    }
  }
  return fams;
}

inline void sort_families_by_denominator(std::vector<candidate_family>& fams) {
  std::sort(fams.begin(), fams.end(), [](const candidate_family& a, const candidate_family& b) {
    if (a.den != b.den) return a.den < b.den;
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.start != b.start) return a.start < b.start;
    return a.skip < b.skip;
  });
}

// Walks every candidate of every family, handing (num, den, dist_num) to the
// visitor, where the candidate's objective value is dist_num/den. The visitor
// returns false to stop the scan early. Prod is the unsigned type used for
// residue products (u64 fast path, u128 wide path).
template <class Prod, class Visit>
std::uint64_t scan_candidates(const speed_set& D, const std::vector<candidate_family>& fams,
                              Visit&& visit) {
  const std::uint32_t k = static_cast<std::uint32_t>(D.size());
  std::uint64_t seen = 0;
  std::vector<std::uint64_t> res(k), step(k);
  for (const auto& fam : fams) {
    const std::uint64_t q = fam.den;
    if (fam.start >= q) continue;
    for (std::uint32_t i = 0; i < k; ++i) {
      res[i] = static_cast<std::uint64_t>((Prod(fam.start) * D[i]) % q);
      step[i] = static_cast<std::uint64_t>((Prod(fam.stride) * D[i]) % q);
    }
    for (std::uint64_t m = fam.start;;) {
      std::uint64_t best = q;  // any runner distance numerator is <= q/2
      for (std::uint32_t i = 0; i < k; ++i) {
        if (i == fam.skip) continue;
        const std::uint64_t r = res[i];
        const std::uint64_t v = r <= q - r ? r : q - r;
        if (v < best) best = v;
      }
      ++seen;
      if (!visit(m, q, best)) return seen;
      m += fam.stride;
      if (m >= q) break;
      for (std::uint32_t i = 0; i < k; ++i) {
        std::uint64_t r = res[i] + step[i];
        if (r >= q) r -= q;
        res[i] = r;
      }
    }
  }
  return seen;
}

template <class Prod>
kappa_result kappa_scan(const speed_set& D) {
  if (D.empty()) throw std::invalid_argument("kappa: empty speed set");
  if (D.size() == 1) {
    // single runner: f peaks at 1/2, first attained at 1/(2d)
    return {rational(1, 2), rational(1, int128(2) * D[0]), 1};
  }
  auto fams = detail::candidate_families(D);
  std::uint64_t best_v = 0, best_q = 1;   // value best_v / best_q, starts at 0
  std::uint64_t wit_n = 0, wit_q = 1;     // witness wit_n / wit_q
  auto seen = scan_candidates<Prod>(D, fams, [&](std::uint64_t m, std::uint64_t q, std::uint64_t v) {
    const Prod lhs = Prod(v) * best_q;
    const Prod rhs = Prod(best_v) * q;
    if (lhs > rhs) {
      best_v = v;
      best_q = q;
      wit_n = m;
      wit_q = q;
    } else if (lhs == rhs) {
      if (Prod(m) * wit_q < Prod(wit_n) * q) {  // tie: keep the smallest time
        wit_n = m;
        wit_q = q;
      }
    }
    return true;
  });
  return {rational(int128(best_v), int128(best_q)), rational(int128(wit_n), int128(wit_q)), seen};
}

}  // namespace detail

// Exact kappa via the 64-bit fast path; rejects d_max > 10^9 (use
// kappa_exact_wide beyond — same algorithm, 128-bit products).
inline kappa_result kappa_exact(const speed_set& D) {
  if (D.empty()) throw std::invalid_argument("kappa_exact: empty speed set");
  if (D.max_speed() > kKappaFastMaxSpeed)
    throw std::domain_error("kappa_exact: max speed exceeds 1e9; use kappa_exact_wide");
  return detail::kappa_scan<std::uint64_t>(D);
}

// Exact for every admissible speed set (speeds <= 2^62); roughly 2-4x slower.
inline kappa_result kappa_exact_wide(const speed_set& D) {
  return detail::kappa_scan<uint128>(D);
}

// The full candidate list as reduced rationals in (0, 1), deduplicated and
// sorted. Materializes ~(sum of family denominators) entries — intended for
// small sets; the scanning entry points above never build this.
inline std::vector<rational> candidate_points(const speed_set& D) {
  if (D.empty()) throw std::invalid_argument("candidate_points: empty speed set");
  if (D.max_speed() > kKappaFastMaxSpeed)
    throw std::domain_error("candidate_points: max speed exceeds 1e9");
  auto fams = detail::candidate_families(D);
  std::vector<rational> pts;
  for (const auto& fam : fams) {
    for (std::uint64_t m = fam.start; m < fam.den; m += fam.stride)
      pts.emplace_back(int128(m), int128(fam.den));
  }
  std::sort(pts.begin(), pts.end(), [](const rational& a, const rational& b) { return a < b; });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Grid lower bound: max over x = j/G, j = 0..G-1. Never exceeds kappa(D);
// used as an oracle and for quick scouting.
inline rational kappa_grid(const speed_set& D, std::uint64_t G) {
  if (D.empty()) throw std::invalid_argument("kappa_grid: empty speed set");
  if (G < 2) throw std::invalid_argument("kappa_grid: need G >= 2");
  const std::uint32_t k = static_cast<std::uint32_t>(D.size());
  std::vector<std::uint64_t> res(k), step(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    res[i] = 0;
    step[i] = D[i] % G;
  }
  std::uint64_t best = 0;
  for (std::uint64_t j = 0; j < G; ++j) {
    std::uint64_t v = G;
    for (std::uint32_t i = 0; i < k; ++i) {
      const std::uint64_t r = res[i];
      const std::uint64_t d = r <= G - r ? r : G - r;
      if (d < v) v = d;
    }
    if (v > best) best = v;
    for (std::uint32_t i = 0; i < k; ++i) {
      std::uint64_t r = res[i] + step[i];
      if (r >= G) r -= G;
      res[i] = r;
    }
  }
  return rational(int128(best), int128(G));
}

// Decides kappa(D) >= theta without completing the full scan: candidates are
// visited in increasing order of denominator (ties: peaks, then sums, then
// diffs, then by runner index) and the first witness stops the scan. Returns
// the witness time, or nullopt when kappa(D) < theta.
inline std::optional<rational> kappa_at_least(const speed_set& D, const rational& theta) {
  if (D.empty()) throw std::invalid_argument("kappa_at_least: empty speed set");
  if (theta.is_negative() || theta > rational(1, 2))
    throw std::invalid_argument("kappa_at_least: theta must lie in [0, 1/2]");
  if (theta.den() > int128(kMaxSpeed))
    throw std::invalid_argument("kappa_at_least: theta denominator exceeds 2^62");
  if (D.max_speed() > kKappaFastMaxSpeed)
    throw std::domain_error("kappa_at_least: max speed exceeds 1e9");
  if (D.size() == 1) return rational(1, int128(2) * D[0]);  // kappa = 1/2 >= theta
  auto fams = detail::candidate_families(D);
  detail::sort_families_by_denominator(fams);
  const std::uint64_t tn = static_cast<std::uint64_t>(theta.num());
  const std::uint64_t td = static_cast<std::uint64_t>(theta.den());
  std::optional<rational> found;
  detail::scan_candidates<std::uint64_t>(
      D, fams, [&](std::uint64_t m, std::uint64_t q, std::uint64_t v) {
        if (uint128(v) * td >= uint128(tn) * q) {
          found = rational(int128(m), int128(q));
          return false;
        }
        return true;
      });
  return found;
}

}  // namespace lonerun
