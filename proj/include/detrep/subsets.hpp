#pragma once

// Subsets of {1..m} as bitmasks (bit i-1 <-> element i), ranked in
// colexicographic order within each cardinality class.  Colex on sets equals
// plain integer order on masks, which keeps everything branch-light.

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "detrep/core.hpp"

namespace detrep {

using Subset = std::uint32_t;

inline int subset_size(Subset I) { return std::popcount(I); }

inline bool subset_contains(Subset I, int i) {
  return (I >> (i - 1)) & 1u;
}

// Position of I among all |I|-subsets in colex order:
//   rank{a_1 < ... < a_k} = sum_t binom(a_t - 1, t).
inline std::uint64_t subset_rank(Subset I) {
  std::uint64_t r = 0;
  int t = 1;
  while (I) {
    int a = std::countr_zero(I) + 1;  // smallest element
    r += binom(a - 1, t);
    ++t;
    I &= I - 1;
  }
  return r;
}

// Inverse of subset_rank for k-subsets of {1..m}: choose elements greedily
// from the largest down.
inline Subset subset_unrank(std::uint64_t r, int k, int m) {
  require(k >= 0 && k <= m && m >= 0 && m <= 32, "subset_unrank: bad k or m");
  require(r < binom(m, k), "subset_unrank: rank out of range");
  Subset I = 0;
  for (int t = k; t >= 1; --t) {
    int a = t;  // smallest possible t-th element
    while (binom(a, t) <= r) ++a;
    // now binom(a-1, t) <= r < binom(a, t)  =>  element is a
    r -= binom(a - 1, t);
    I |= Subset(1) << (a - 1);
  }
  return I;
}

// All k-subsets of {1..m} in colex order (= increasing mask order).
inline std::vector<Subset> subsets_of_size(int m, int k) {
  require(m >= 0 && m <= 32 && k >= 0 && k <= m, "subsets_of_size: bad k or m");
  std::vector<Subset> out;
  out.reserve(binom(m, k));
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  Subset I = (Subset(1) << k) - 1;
  Subset limit = k <= m ? (m == 32 ? ~Subset(0) : (Subset(1) << m) - 1) : 0;
  while (true) {
    out.push_back(I);
    if (out.size() == binom(m, k)) break;
    // Gosper's hack: next mask with the same popcount.
    Subset c = I & -I;
    Subset r = I + c;
    I = (((r ^ I) >> 2) / c) | r;
    DETREP_CHECK(I <= limit, "subsets_of_size: enumeration escaped range");
  }
  return out;
}

// I u {i}, or nothing when i is already a member.
inline std::optional<Subset> subset_insert(Subset I, int i) {
  require(i >= 1 && i <= 32, "subset_insert: element out of range");
  if (subset_contains(I, i)) return std::nullopt;
  return I | (Subset(1) << (i - 1));
}

// Sign of wedging e_i into e_I in sorted order: (-1)^(#{j in I : j < i}).
// Precondition: i not in I.
inline int wedge_sign(int i, Subset I) {
  require(i >= 1 && i <= 32, "wedge_sign: element out of range");
  require(!subset_contains(I, i), "wedge_sign: element already in subset");
  int below = std::popcount(I & ((Subset(1) << (i - 1)) - 1));
  return (below & 1) ? -1 : 1;
}

}  // namespace detrep
