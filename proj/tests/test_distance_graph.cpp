#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "lonerun/distance_graph.hpp"
#include "lonerun/rng.hpp"

using namespace lonerun;

TEST_CASE("coloring the consecutive pair") {
  auto col = build_coloring(speed_set({1, 2}), 20);
  REQUIRE(col.kappa == rational(1, 3));
  REQUIRE(col.witness_time == rational(1, 3));
  REQUIRE(col.n_colors == 3);
  REQUIRE(col.colors_used == 3);
  REQUIRE(col.violations.empty());
  // {a/3} walks the residues, so the colors cycle with period 3
  std::vector<std::uint32_t> head(col.colors.begin(), col.colors.begin() + 6);
  REQUIRE(head == std::vector<std::uint32_t>{2, 3, 1, 2, 3, 1});
}

TEST_CASE("coloring a three-speed set") {
  auto col = build_coloring(speed_set({3, 4, 5}), 500);
  REQUIRE(col.kappa == rational(3, 8));
  REQUIRE(col.witness_time == rational(1, 8));
  REQUIRE(col.n_colors == 3);  // ceil(8/3)
  REQUIRE(col.colors_used == 3);
  REQUIRE(col.violations.empty());
  for (auto c : col.colors) REQUIRE((1 <= c && c <= 3));
}

TEST_CASE("random sets color properly with exactly the interval budget") {
  splitmix64 g(80);
  for (int rep = 0; rep < 25; ++rep) {
    std::uint32_t k = 1 + static_cast<std::uint32_t>(uniform_below(g, 3));
    speed_set D(sample_k_subset(100, k, g.next()));
    auto col = build_coloring(D, 500);
    REQUIRE(col.violations.empty());
    REQUIRE(col.n_colors == static_cast<std::uint32_t>(ceil_reciprocal(col.kappa)));
    REQUIRE(col.colors_used <= col.n_colors);
    std::uint32_t greedy = greedy_chromatic_upper(D, 500);
    REQUIRE(greedy <= static_cast<std::uint32_t>(D.size()) + 1);
    // both colorings bound the same chromatic number, neither is trusted more
    REQUIRE(col.colors.size() == 500);
  }
}

TEST_CASE("verify_proper reports exactly the monochromatic edges") {
  speed_set D({1, 3});
  // hand-built bad coloring on 6 vertices: 1,2,3,4,5,6 -> a,b,a,a,b,a
  std::vector<std::uint32_t> colors = {1, 2, 1, 1, 2, 1};
  auto bad = verify_proper(D, colors, 6);
  std::set<std::pair<std::uint64_t, std::uint64_t>> got(bad.begin(), bad.end());
  std::set<std::pair<std::uint64_t, std::uint64_t>> want = {{3, 4}, {1, 4}, {3, 6}, {2, 5}};
  REQUIRE(got == want);
  REQUIRE_THROWS_AS(verify_proper(D, colors, 7), std::invalid_argument);
}

TEST_CASE("upper bound report") {
  auto r12 = chi_upper_report(speed_set({1, 2}));
  REQUIRE(r12.interval_bound == 3);
  REQUIRE(r12.trivial_bound == 3);
  REQUIRE(r12.effective == 3);

  auto r345 = chi_upper_report(speed_set({3, 4, 5}));
  REQUIRE(r345.kappa == rational(3, 8));
  REQUIRE(r345.interval_bound == 3);
  REQUIRE(r345.trivial_bound == 4);
  REQUIRE(r345.effective == 3);

  // a single runner always two-colors its graph
  auto r7 = chi_upper_report(speed_set({7}));
  REQUIRE(r7.interval_bound == 2);
  REQUIRE(r7.effective == 2);
}

TEST_CASE("greedy coloring is proper") {
  splitmix64 g(81);
  for (int rep = 0; rep < 10; ++rep) {
    std::uint32_t k = 1 + static_cast<std::uint32_t>(uniform_below(g, 4));
    speed_set D(sample_k_subset(60, k, g.next()));
    const std::uint64_t M = 300;
    std::uint32_t greedy = greedy_chromatic_upper(D, M);
    REQUIRE(greedy >= 1);
    REQUIRE(greedy <= static_cast<std::uint32_t>(D.size()) + 1);
    auto col = build_coloring(D, M);
    REQUIRE(col.violations.empty());
  }
}

TEST_CASE("argument validation") {
  REQUIRE_THROWS_AS(build_coloring(speed_set({1, 2}), 0), std::invalid_argument);
  REQUIRE_THROWS_AS(greedy_chromatic_upper(speed_set({1, 2}), 0), std::invalid_argument);
  speed_set empty;
  REQUIRE_THROWS_AS(build_coloring(empty, 5), std::invalid_argument);
  REQUIRE_THROWS_AS(chi_upper_report(empty), std::invalid_argument);
  REQUIRE_THROWS_AS(greedy_chromatic_upper(empty, 5), std::invalid_argument);
}
