#include <cstdlib>

#include <catch2/catch_amalgamated.hpp>

#include "lonerun/rng.hpp"
#include "lonerun/zp.hpp"

using namespace lonerun;

namespace {

speed_set make(std::vector<std::uint64_t> v) { return speed_set(std::move(v)); }

// spec-faithful oracle on unsigned residues: dependent iff some nonzero
// residue vector r in Z_p^k has sum ||r_i||_p <= L and sum r_i d_i = 0 mod p.
// Exhausts Z_p^k, so only usable for tiny p.
bool dependent_oracle(const std::vector<std::uint64_t>& D, std::uint64_t p, std::uint32_t L) {
  std::size_t k = D.size();
  std::vector<std::uint64_t> r(k, 0);
  while (true) {
    std::uint64_t nsum = 0, dot = 0;
    bool nonzero = false;
    for (std::size_t i = 0; i < k; ++i) {
      std::uint64_t a = r[i] % p;
      nsum += a <= p - a ? a : p - a;
      dot = (dot + a * (D[i] % p)) % p;
      if (a != 0) nonzero = true;
    }
    if (nonzero && nsum <= L && dot == 0) return true;
    std::size_t i = 0;
    while (i < k && ++r[i] == p) r[i++] = 0;
    if (i == k) return false;
  }
}

}  // namespace

TEST_CASE("residue norm") {
  REQUIRE(norm_p(0, 7) == 0);
  REQUIRE(norm_p(3, 7) == 3);
  REQUIRE(norm_p(4, 7) == 3);
  REQUIRE(norm_p(6, 7) == 1);
  REQUIRE(norm_p(10, 7) == 3);
  REQUIRE_THROWS_AS(norm_p(3, 6), std::invalid_argument);
}

TEST_CASE("worked independence examples") {
  auto dep = is_L_independent(make({1, 2}), 101, 3);
  REQUIRE_FALSE(dep.independent);
  REQUIRE(dep.witness == std::vector<std::int64_t>{2, -1});  // first in magnitude-lex order

  auto ind = is_L_independent(make({1, 2}), 101, 2);
  REQUIRE(ind.independent);
  REQUIRE_FALSE(ind.witness.has_value());
  REQUIRE(ind.vectors_checked == 12);  // the whole punctured L1 ball of radius 2

  auto d35 = is_L_independent(make({3, 5}), 1009, 9);
  REQUIRE_FALSE(d35.independent);
  REQUIRE(d35.witness == std::vector<std::int64_t>{5, -3});  // 3*5 - 5*3 = 0
  REQUIRE(d35.vectors_checked == 137);

  auto i911 = is_L_independent(make({9, 11}), 1009, 9);
  REQUIRE(i911.independent);
  REQUIRE(i911.vectors_checked == 180);  // 2L(L+1) for k = 2
}

TEST_CASE("witnesses are genuine relations") {
  splitmix64 g(61);
  int dependent_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::uint64_t p = std::vector<std::uint64_t>{11, 13, 31, 101}[uniform_below(g, 4)];
    std::uint32_t k = 2 + static_cast<std::uint32_t>(uniform_below(g, 2));
    std::uint32_t L = 1 + static_cast<std::uint32_t>(uniform_below(g, (p > 11 ? 5 : 4)));
    auto D = sample_k_subset(p - 1, k, g.next());
    auto rep = is_L_independent(make(D), p, L);
    if (rep.independent) continue;
    ++dependent_seen;
    const auto& w = *rep.witness;
    std::int64_t l1 = 0;
    std::int64_t dot = 0;
    bool nonzero = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      l1 += std::abs(w[i]);
      dot += w[i] * static_cast<std::int64_t>(D[i]);
      if (w[i] != 0) nonzero = true;
    }
    REQUIRE(nonzero);
    REQUIRE(l1 <= static_cast<std::int64_t>(L));
    REQUIRE(((dot % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) %
                static_cast<std::int64_t>(p) ==
            0);
  }
  REQUIRE(dependent_seen > 20);  // the sample actually exercised the branch
}

TEST_CASE("signed search matches the unsigned residue oracle") {
  splitmix64 g(62);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint64_t p = std::vector<std::uint64_t>{7, 11, 13, 17}[uniform_below(g, 4)];
    std::uint32_t k = 1 + static_cast<std::uint32_t>(uniform_below(g, 3));
    if (k > p - 1) k = 1;
    std::uint32_t L = 1 + static_cast<std::uint32_t>(uniform_below(g, (p - 1) / 2));
    auto D = sample_k_subset(p - 1, k, g.next());
    auto rep = is_L_independent(make(D), p, L);
    REQUIRE(rep.independent == !dependent_oracle(D, p, L));
  }
}

TEST_CASE("guards") {
  REQUIRE_THROWS_AS(is_L_independent(make({1, 2}), 7, 4), std::domain_error);   // 2L >= p
  REQUIRE_THROWS_AS(is_L_independent(make({1, 2}), 6, 2), std::invalid_argument);  // composite
  REQUIRE_THROWS_AS(is_L_independent(make({7, 14}), 7, 2), std::invalid_argument);  // 0 mod p
  REQUIRE_THROWS_AS(is_L_independent(make({2, 103}), 101, 3), std::invalid_argument);  // collide
}

TEST_CASE("exhaustive dependent counts at small primes") {
  REQUIRE(count_dependent_subsets(7, 2, 2) == 3);    // exactly the pairs summing to 7
  REQUIRE(count_dependent_subsets(13, 2, 2) == 6);   // exactly the pairs summing to 13
  // independent recount through the single-set decider
  std::uint64_t recount = 0;
  for (std::uint64_t a = 1; a < 13; ++a)
    for (std::uint64_t b = a + 1; b < 13; ++b)
      if (!is_L_independent(make({a, b}), 13, 2).independent) ++recount;
  REQUIRE(recount == 6);
  REQUIRE_THROWS_AS(count_dependent_subsets(101, 5, 2), std::domain_error);  // > 1e7 subsets
}

TEST_CASE("counting bound dominates the exhaustive count") {
  for (std::uint64_t p : {7ull, 13ull, 31ull}) {
    for (std::uint32_t k : {1u, 2u}) {
      for (std::uint32_t L : {1u, 2u, 3u}) {
        if (2ull * L >= p) continue;
        auto count = count_dependent_subsets(p, k, L);
        REQUIRE(int128(count) <= dependent_count_bound(p, k, L));
      }
    }
  }
  REQUIRE(dependent_count_bound(7, 2, 2) == int128(150));  // 25 * C(6,1)
  REQUIRE(dependent_fraction_bound(7, 2, 2) == rational(10));
  REQUIRE(dependent_fraction_bound(1009, 2, 9) == rational(722, 1007));
}

TEST_CASE("sampled independent fraction is deterministic and beats the bound") {
  auto s = sample_independent_fraction(1009, 2, 9, 2000, 1);
  REQUIRE(s.independent_count == 1918);  // pinned stream
  auto again = sample_independent_fraction(1009, 2, 9, 2000, 1);
  REQUIRE(again.independent_count == s.independent_count);
  // 1 - fraction <= (2L+1)^2 * 2 / (p - 2), with slack for sampling noise
  double cap = rational(722, 1007).to_double();
  REQUIRE(1.0 - s.fraction <= cap + 5 * s.std_error);
  REQUIRE_THROWS_AS(sample_independent_fraction(8, 2, 2, 10, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(sample_independent_fraction(13, 2, 9, 10, 0), std::domain_error);
}
