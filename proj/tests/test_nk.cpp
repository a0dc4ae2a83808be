#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "apl/nk.hpp"
#include "apl/reference.hpp"
#include "apl/stats.hpp"

using namespace apl;
using namespace apl::nk;

TEST_CASE("landscape construction") {
  const NKLandscape a(10, 3, 42);
  const NKLandscape b(10, 3, 42);
  CHECK(std::equal(a.table().begin(), a.table().end(), b.table().begin()));
  CHECK(a.table().size() == 10u * 8u);
  const NKLandscape c(10, 3, 43);
  CHECK_FALSE(std::equal(a.table().begin(), a.table().end(), c.table().begin()));

  CHECK_THROWS_AS(NKLandscape(25, 2, 1), std::domain_error);
  CHECK_THROWS_AS(NKLandscape(10, 11, 1), std::domain_error);
  CHECK_THROWS_AS(NKLandscape(10, 0, 1), std::domain_error);
  CHECK_THROWS_AS(NKLandscape(24, 24, 1), std::domain_error);
}

TEST_CASE("potentials are standard Gaussian") {
  const NKLandscape land(16, 13, 7);
  const auto t = land.table();
  REQUIRE(t.size() >= 100000u);
  const auto s = stats::summarize(t);
  double var = 0.0;
  for (double y : t) var += (y - s.mean) * (y - s.mean);
  var /= static_cast<double>(t.size() - 1);
  const double n = static_cast<double>(t.size());
  CHECK(std::abs(s.mean) < 3 / std::sqrt(n));
  CHECK(std::abs(var - 1.0) < 3 * std::sqrt(2.0 / n));
}

TEST_CASE("custom potential law") {
  const NKLandscape land(6, 2, 3, [](CounterRng& rng) { return rng.uniform(); });
  for (double y : land.table()) {
    CHECK(y > 0.0);
    CHECK(y < 1.0);
  }
}

TEST_CASE("windows wrap cyclically") {
  const NKLandscape land(6, 3, 1);
  const Genotype s{0b100011};
  CHECK(land.window(s, 0) == 0b011u);
  CHECK(land.window(s, 4) == 0b110u);  // bits 4, 5, 0
  CHECK(land.window(s, 5) == 0b111u);  // bits 5, 0, 1
}

TEST_CASE("fitness against the naive evaluation") {
  CounterRng rng(derive_key(5, 1));
  for (int rep = 0; rep < 50; ++rep) {
    const int N = 1 + static_cast<int>(rng.below(16));
    const int K = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(N, 10))));
    const NKLandscape land(N, K, rng());
    for (int i = 0; i < 20; ++i) {
      const Genotype s{static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << N))};
      CHECK(fitness_of(land, s) == reference::naive_fitness(land, s));
    }
  }
  const NKLandscape k1(8, 1, 9);
  const Genotype s{0b10110010};
  double expected = 0.0;
  for (int i = 0; i < 8; ++i) expected += k1.potential(i, s[i]);
  CHECK(fitness_of(k1, s) == expected);
  double zeros = 0.0;
  for (int i = 0; i < 8; ++i) zeros += k1.potential(i, 0);
  CHECK(fitness_of(k1, Genotype{0}) == zeros);
}

TEST_CASE("exhaustive maximum") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int N = 4 + static_cast<int>(seed % 11);
    const int K = 1 + static_cast<int>(seed % 4);
    const NKLandscape land(N, K, seed);
    const auto fast = exhaustive_max(land);
    const auto slow = reference::naive_exhaustive_max(land);
    CHECK(fast.genotype == slow.genotype);
    CHECK(fast.value == slow.value);
    CounterRng rng(derive_key(seed, 2));
    for (int i = 0; i < 100; ++i)
      CHECK(fast.value >= fitness_of(land, Genotype{static_cast<std::uint32_t>(
                                                 rng.below(std::uint64_t{1} << N))}));
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const NKLandscape land(12, 1, seed);
    double expected = 0.0;
    for (int i = 0; i < 12; ++i) expected += std::max(land.potential(i, 0), land.potential(i, 1));
    CHECK(exhaustive_max(land).value == expected);
  }
}

TEST_CASE("greedy block maximization") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int N = 6 + static_cast<int>(seed % 12);
    const int K = 1 + static_cast<int>(seed % 5);
    if (K > N) continue;
    const NKLandscape land(N, K, seed);
    const auto g = greedy_block_max(land);
    CHECK(g.value <= exhaustive_max(land).value);
    CHECK(g.value == fitness_of(land, g.genotype));
    CHECK(g.block_increments.size() == static_cast<std::size_t>(N / K - 1));
    // First block and tail are zero.
    const std::uint32_t used = ((std::uint32_t{1} << ((N / K) * K)) - 1) & ~((1u << K) - 1);
    CHECK((g.genotype.bits & ~used) == 0u);
  }
  const NKLandscape full(10, 10, 3);
  const auto g = greedy_block_max(full);
  CHECK(g.genotype.bits == 0u);
  CHECK(g.value == fitness_of(full, Genotype{0}));
  CHECK(g.block_increments.empty());
}

TEST_CASE("greedy blocks pick the best pattern") {
  const NKLandscape land(12, 3, 77);
  const auto g = greedy_block_max(land);
  // Re-derive block 1 by brute force over its 8 patterns.
  double best = -1e300;
  for (std::uint32_t p = 0; p < 8; ++p) {
    const Genotype s{p << 3};
    double sum = 0.0;
    for (int site = 1; site <= 3; ++site) sum += land.potential(site, land.window(s, site));
    best = std::max(best, sum);
  }
  CHECK(g.block_increments[0] == best);
}

TEST_CASE("branching random walk maximum") {
  CounterRng rng(derive_key(5, 3));
  const int draws = 200000;
  double sum = 0.0;
  double sumsq = 0.0;
  for (int d = 0; d < draws; ++d) {
    const double m = block_brw_max(1, rng);
    sum += m;
    sumsq += m * m;
  }
  const double mean = sum / draws;
  const double se = std::sqrt((sumsq / draws - mean * mean) / draws);
  CHECK(std::abs(mean - 1.0 / std::sqrt(std::numbers::pi)) < 3 * se);

  // A replayed stream gives the same maximum, which dominates every leaf.
  CounterRng a(derive_key(5, 4));
  CounterRng b = a;
  const double m = block_brw_max(4, a);
  std::vector<double> level{0.0};
  for (int depth = 1; depth <= 4; ++depth) {
    std::vector<double> next(level.size() * 2);
    for (std::size_t p = 0; p < level.size(); ++p) {
      next[2 * p] = level[p] + b.normal();
      next[2 * p + 1] = level[p] + b.normal();
    }
    level = next;
  }
  for (double leaf : level) CHECK(m >= leaf);
  CHECK(m == *std::max_element(level.begin(), level.end()));

  CHECK_THROWS_AS(block_brw_max(21, rng), std::domain_error);
  CHECK_THROWS_AS(block_brw_max(0, rng), std::domain_error);
}

TEST_CASE("centering constant") {
  CHECK(brw_centering(1) == doctest::Approx(std::sqrt(2 * std::log(2.0))));
  CHECK(std::abs(brw_centering(8) - 6.770108) < 1e-5);
  CHECK(std::abs(brw_centering(16) - 15.30633) < 1e-4);
}

TEST_CASE("adaptive walks") {
  CounterRng rng(derive_key(5, 5));
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const NKLandscape land(10, 1 + static_cast<int>(seed % 4), seed);
    const auto best = exhaustive_max(land);
    const auto stay = adaptive_walk(land, best.genotype, WalkRule::random, rng);
    CHECK(stay.steps == 0);
    for (WalkRule rule : {WalkRule::random, WalkRule::steepest}) {
      const Genotype start{static_cast<std::uint32_t>(rng.below(1024))};
      const auto w = adaptive_walk(land, start, rule, rng);
      CHECK(is_local_max(land, w.path.back()));
      CHECK(w.path.size() == static_cast<std::size_t>(w.steps) + 1);
      CHECK(w.final_fitness == fitness_of(land, w.path.back()));
      for (std::size_t i = 1; i < w.path.size(); ++i) {
        CHECK(std::popcount(w.path[i].bits ^ w.path[i - 1].bits) == 1);
        CHECK(fitness_of(land, w.path[i]) > fitness_of(land, w.path[i - 1]));
      }
    }
  }
  // K = 1 has a single local maximum: every walk reaches the global one.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const NKLandscape land(14, 1, seed);
    const auto w = adaptive_walk(land, Genotype{0}, WalkRule::steepest, rng);
    CHECK(w.final_fitness == exhaustive_max(land).value);
    CHECK(count_local_maxima(land) == 1);
  }
}

TEST_CASE("local statistic") {
  CHECK(statistic_sites(24, 2) == std::vector<int>{7, 15, 23});
  CHECK(statistic_sites(7, 2).empty());
  const NKLandscape k1(8, 1, 4);
  CHECK(local_statistic_T(k1, Genotype{0b1000}, 3) == k1.potential(3, 1));
  CHECK_THROWS_AS(local_statistic_T(k1, Genotype{0}, 2), std::domain_error);

  CounterRng rng(derive_key(5, 6));
  for (int rep = 0; rep < 1000; ++rep) {
    const int K = 1 + static_cast<int>(rng.below(4));
    const int N = 4 * K + static_cast<int>(rng.below(static_cast<std::uint64_t>(24 - 4 * K + 1)));
    // Potentials on a 2^-20 grid make every sum exact, so both sides must
    // agree bit for bit.
    const auto dyadic = [](CounterRng& r) { return std::round(r.normal() * 0x1p20) * 0x1p-20; };
    const NKLandscape land(N, K, rng(), dyadic);
    const auto sites = statistic_sites(land.N(), K);
    REQUIRE_FALSE(sites.empty());
    const int k = sites[rng.below(sites.size())];
    const Genotype s{static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << land.N()))};
    const Genotype f = s.flipped(k);
    const double lhs = fitness_of(land, s) - fitness_of(land, f);
    const double rhs = local_statistic_T(land, s, k) - local_statistic_T(land, f, k);
    CHECK(lhs == rhs);
    const NKLandscape gauss(land.N(), K, rng());
    CHECK(fitness_of(gauss, s) - fitness_of(gauss, f) ==
          doctest::Approx(local_statistic_T(gauss, s, k) - local_statistic_T(gauss, f, k)));
  }

  // Disjoint windows at stride K tile the genome when K divides N.
  const NKLandscape tiled(12, 3, 8);
  const Genotype s{0xABC};
  double total = 0.0;
  for (int i = 0; i < 12; ++i) total += tiled.potential(i, tiled.window(s, i));
  CHECK(total == doctest::Approx(fitness_of(tiled, s)));
  CHECK(count_low_statistics(tiled, s, 1e9) == 1);
  CHECK(count_low_statistics(tiled, s, -1e9) == 0);
}
