#pragma once

// Distance-graph coloring on {1, ..., M}: vertices a, b are adjacent when
// |a - b| lands in the speed set D. If t witnesses kappa(D) = u/v, then
// c(a) = floor({t a} N) + 1 with N = ceil(1/kappa) is a proper coloring:
// adjacent vertices differ by some d in D, and ||t d|| >= kappa >= 1/N keeps
// {t a} and {t b} in different N-ths of the circle... more precisely within
// the same cell the fractional parts differ by less than 1/N <= kappa, while
// adjacency forces circular distance >= kappa. Exact rational arithmetic
// throughout, so the coloring is reproducible and the bound is sharp by
// construction.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lonerun/kappa.hpp"
#include "lonerun/rational.hpp"
#include "lonerun/speed_set.hpp"

namespace lonerun {

struct coloring_result {
  speed_set D;
  rational kappa;
  rational witness_time;
  std::uint32_t n_colors = 0;                 // N = ceil(1 / kappa)
  std::uint32_t colors_used = 0;              // distinct colors that appear
  std::vector<std::uint32_t> colors;          // colors[a - 1] is vertex a's color, in 1..N
  std::vector<std::pair<std::uint64_t, std::uint64_t>> violations;  // empty iff proper
};

// All edges (a, b) with the same color, a < b <= M, |b - a| in D.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> verify_proper(
    const speed_set& D, const std::vector<std::uint32_t>& colors, std::uint64_t M) {
  if (colors.size() < M) throw std::invalid_argument("verify_proper: colors shorter than M");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> bad;
  for (std::uint64_t a = 1; a <= M; ++a) {
    for (std::uint64_t d : D) {
      if (d >= a) continue;  // count each edge from its upper endpoint
      if (colors[a - 1] == colors[a - d - 1]) bad.emplace_back(a - d, a);
    }
  }
  return bad;
}

// Colors {1, ..., M} with exactly N = ceil(1/kappa(D)) colors via the
// kappa witness; verifies properness before returning.
inline coloring_result build_coloring(const speed_set& D, std::uint64_t M) {
  if (D.empty()) throw std::invalid_argument("build_coloring: empty speed set");
  if (M == 0) throw std::invalid_argument("build_coloring: M must be positive");
  auto kr = kappa_exact(D);
  const int128 N128 = ceil_reciprocal(kr.value);
  const std::uint32_t N = static_cast<std::uint32_t>(N128);  // N <= 2k + 1, tiny
  const uint128 wn = static_cast<uint128>(kr.witness.num());
  const uint128 wd = static_cast<uint128>(kr.witness.den());

  coloring_result out;
  out.D = D;
  out.kappa = kr.value;
  out.witness_time = kr.witness;
  out.n_colors = N;
  out.colors.resize(M);
  std::vector<bool> seen(N + 1, false);
  for (std::uint64_t a = 1; a <= M; ++a) {
    // {t a} = (wn * a mod wd) / wd; its cell index is floor({t a} * N)
    uint128 fr = (wn * a) % wd;
    std::uint32_t c = static_cast<std::uint32_t>((fr * N) / wd) + 1;
    out.colors[a - 1] = c;
    seen[c] = true;
  }
  for (std::uint32_t c = 1; c <= N; ++c)
    if (seen[c]) ++out.colors_used;
  out.violations = verify_proper(D, out.colors, M);
  return out;
}

struct chi_report {
  rational kappa;
  std::uint32_t interval_bound = 0;  // ceil(1 / kappa)
  std::uint32_t trivial_bound = 0;   // |D| + 1
  std::uint32_t effective = 0;       // min of the two
};

// chi(G(D)) <= min(ceil(1/kappa), |D| + 1). The |D| + 1 side is classical
// (the graph is |D|-degenerate on each residue progression... greedily, every
// vertex has at most |D| earlier neighbors).
inline chi_report chi_upper_report(const speed_set& D) {
  if (D.empty()) throw std::invalid_argument("chi_upper_report: empty speed set");
  auto kr = kappa_exact(D);
  chi_report out;
  out.kappa = kr.value;
  out.interval_bound = static_cast<std::uint32_t>(ceil_reciprocal(kr.value));
  out.trivial_bound = static_cast<std::uint32_t>(D.size() + 1);
  out.effective = std::min(out.interval_bound, out.trivial_bound);
  return out;
}

// First-fit along 1..M, scanning each vertex's at most |D| left-neighbors.
// An independent upper bound to compare the interval coloring against.
inline std::uint32_t greedy_chromatic_upper(const speed_set& D, std::uint64_t M) {
  if (D.empty()) throw std::invalid_argument("greedy_chromatic_upper: empty speed set");
  if (M == 0) throw std::invalid_argument("greedy_chromatic_upper: M must be positive");
  std::vector<std::uint32_t> color(M, 0);
  std::uint32_t used = 0;
  std::vector<bool> taken(D.size() + 2, false);
  for (std::uint64_t a = 1; a <= M; ++a) {
    std::fill(taken.begin(), taken.end(), false);
    for (std::uint64_t d : D) {
      if (d >= a) continue;
      std::uint32_t c = color[a - d - 1];
      if (c < taken.size()) taken[c] = true;
    }
    std::uint32_t c = 1;
    while (taken[c]) ++c;
    color[a - 1] = c;
    if (c > used) used = c;
  }
  return used;
}

}  // namespace lonerun
