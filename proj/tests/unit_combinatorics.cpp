// Subset machinery: colexicographic ranking/unranking of k-subsets of
// {1..m}, iteration in rank order, element insertion, and the signs that
// exterior-algebra minors pick up when a wedge factor is inserted.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <set>
#include <vector>

#include "detrep/core.hpp"
#include "detrep/subsets.hpp"

using namespace detrep;

namespace {

std::vector<int> elements(Subset s) {
  std::vector<int> out;
  for (int i = 1; i <= 32; ++i)
    if (subset_contains(s, i)) out.push_back(i);
  return out;
}

Subset from_elements(const std::vector<int>& v) {
  Subset s = 0;
  for (int x : v) s |= Subset(1) << (x - 1);
  return s;
}

}  // namespace

TEST_CASE("subset basics: size and membership") {
  Subset s = from_elements({1, 3, 4});
  CHECK(subset_size(s) == 3);
  CHECK(subset_contains(s, 1));
  CHECK_FALSE(subset_contains(s, 2));
  CHECK(subset_contains(s, 3));
  CHECK(subset_contains(s, 4));
  CHECK(subset_size(0) == 0);
}

TEST_CASE("colexicographic rank of the 2-subsets of {1,2,3}") {
  // {1,2} < {1,3} < {2,3}
  CHECK(subset_rank(from_elements({1, 2})) == 0);
  CHECK(subset_rank(from_elements({1, 3})) == 1);
  CHECK(subset_rank(from_elements({2, 3})) == 2);
  // and of the 1- and 3-subsets
  CHECK(subset_rank(from_elements({1})) == 0);
  CHECK(subset_rank(from_elements({2})) == 1);
  CHECK(subset_rank(from_elements({3})) == 2);
  CHECK(subset_rank(from_elements({1, 2, 3})) == 0);
  CHECK(subset_rank(Subset(0)) == 0);
}

TEST_CASE("rank/unrank are inverse bijections for all k <= m <= 12") {
  for (int m = 1; m <= 12; ++m)
    for (int k = 0; k <= m; ++k) {
      const std::uint64_t total = binom(m, k);
      std::set<Subset> seen;
      for (std::uint64_t r = 0; r < total; ++r) {
        Subset s = subset_unrank(r, k, m);
        CHECK(subset_size(s) == k);
        if (k > 0) CHECK(elements(s).back() <= m);
        CHECK(subset_rank(s) == r);
        seen.insert(s);
      }
      CHECK(seen.size() == total);  // injective, hence bijective onto 0..total-1
    }
  CHECK_THROWS_AS(subset_unrank(binom(7, 3), 3, 7), std::invalid_argument);
  CHECK_THROWS_AS(subset_unrank(0, 5, 4), std::invalid_argument);
}

TEST_CASE("rank order equals colexicographic and increasing-mask order") {
  // Colex: A < B iff the largest differing element lies in B.  For bitmask
  // subsets that is plain integer comparison of the masks.
  const int m = 8, k = 3;
  auto subs = subsets_of_size(m, k);
  REQUIRE(subs.size() == binom(m, k));
  for (std::size_t i = 0; i + 1 < subs.size(); ++i) {
    Subset a = subs[i], b = subs[i + 1];
    CHECK(a < b);  // mask order
    Subset d = a ^ b;
    int hi = 31 - std::countl_zero(d);
    CHECK(subset_contains(b, hi + 1));  // highest differing element in the later set
  }
}

TEST_CASE("subsets_of_size lists exactly the k-subsets, indexed by rank") {
  for (int m = 1; m <= 10; ++m)
    for (int k = 0; k <= m; ++k) {
      auto subs = subsets_of_size(m, k);
      REQUIRE(subs.size() == binom(m, k));
      for (std::size_t r = 0; r < subs.size(); ++r) {
        CHECK(subset_size(subs[r]) == k);
        CHECK(subset_rank(subs[r]) == r);
        CHECK(subset_unrank(r, k, m) == subs[r]);
      }
    }
}

TEST_CASE("subset_insert adds a missing element and rejects a present one") {
  Subset s = from_elements({2, 5});
  auto t = subset_insert(s, 3);
  REQUIRE(t.has_value());
  CHECK(*t == from_elements({2, 3, 5}));
  CHECK_FALSE(subset_insert(s, 2).has_value());
  CHECK_FALSE(subset_insert(s, 5).has_value());
  auto u = subset_insert(Subset(0), 7);
  REQUIRE(u.has_value());
  CHECK(*u == from_elements({7}));
}

TEST_CASE("wedge_sign equals the sorting parity of prepending the new element") {
  // Inserting i into I = {i_1 < ... < i_k} as the first factor and re-sorting
  // costs one transposition per element of I below i.
  for (int m = 1; m <= 10; ++m)
    for (Subset I : subsets_of_size(m, m > 6 ? 4 : m / 2 + 1))
      for (int i = 1; i <= m; ++i) {
        if (subset_contains(I, i)) continue;
        int below = 0;
        for (int x : elements(I))
          if (x < i) ++below;
        int expect = (below % 2 == 0) ? 1 : -1;
        CHECK(wedge_sign(i, I) == expect);
      }
  // Hand values: inserting 2 into {1,3}: one element below -> sign -1.
  CHECK(wedge_sign(2, from_elements({1, 3})) == -1);
  CHECK(wedge_sign(1, from_elements({2, 3})) == 1);
  CHECK(wedge_sign(3, from_elements({1, 2})) == 1);
  CHECK(wedge_sign(4, Subset(0)) == 1);
}

TEST_CASE("wedge_sign is alternating: double insertion anti-commutes") {
  // e_i ^ (e_j ^ e_I) = - e_j ^ (e_i ^ e_I) translates into a sign identity.
  const int m = 9;
  SplitMix64 rng(88);
  int checked = 0;
  for (int t = 0; t < 400; ++t) {
    Subset I = subset_unrank(rng.next() % binom(m, 3), 3, m);
    int i = 1 + static_cast<int>(rng.next() % m);
    int j = 1 + static_cast<int>(rng.next() % m);
    if (i == j || subset_contains(I, i) || subset_contains(I, j)) continue;
    auto Ij = subset_insert(I, j);
    auto Ii = subset_insert(I, i);
    REQUIRE(Ij.has_value());
    REQUIRE(Ii.has_value());
    int lhs = wedge_sign(i, *Ij) * wedge_sign(j, I);
    int rhs = -wedge_sign(j, *Ii) * wedge_sign(i, I);
    CHECK(lhs == rhs);
    ++checked;
  }
  CHECK(checked > 100);
}
