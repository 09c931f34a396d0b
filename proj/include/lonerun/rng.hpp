#pragma once

// Pinned deterministic randomness. Everything downstream (surveys, sweeps,
// sampled estimates) must reproduce byte-for-byte across platforms and thread
// counts, so the generator and all derivation rules are fixed here rather
// than delegated to <random> (whose distributions are not bit-stable).
//
// Stream discipline: each trial draws from its own generator seeded by
// derive_seed(master, point, trial_index); no generator is ever shared
// between trials, so scheduling order cannot matter.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace lonerun {

// finalizer step of splitmix64; a good standalone 64-bit mixer
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct splitmix64 {
  std::uint64_t state;

  explicit splitmix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t point, std::uint64_t trial) {
  return mix64(mix64(mix64(master ^ 0x9e3779b97f4a7c15ull) ^ point) ^ trial);
}

// uniform in [0, n) by rejection — no modulo bias
inline std::uint64_t uniform_below(splitmix64& g, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: n must be positive");
  std::uint64_t min = (0 - n) % n;  // = 2^64 mod n
  std::uint64_t x;
  do {
    x = g.next();
  } while (x < min);
  return x % n;
}

// Floyd's algorithm: uniform k-subset of {1, ..., n}, returned sorted.
// Exactly k + (#collisions resolved deterministically) draws; the draw
// sequence depends only on the seed.
inline std::vector<std::uint64_t> sample_k_subset(std::uint64_t n, std::uint32_t k, std::uint64_t seed) {
  if (k == 0) throw std::invalid_argument("sample_k_subset: k must be positive");
  if (k > n) throw std::invalid_argument("sample_k_subset: k exceeds n");
  splitmix64 g(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(k * 2);
  for (std::uint64_t j = n - k + 1; j <= n; ++j) {
    std::uint64_t t = 1 + uniform_below(g, j);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lonerun
