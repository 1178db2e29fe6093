#pragma once

// The determinantal pencil constructions.
//
// Level-graded family (blocks indexed by subset size k, variables of level
// k+1 map block k to block k+1, the top level wraps to the corner):
//   * grenet(m):            n = 2^m - 1, det = perm_m (column symmetry)
//   * regular_det(m):       n = 2^m - 1, det = +-det_m (full GL on columns)
//   * equivariant_perm(m):  n = binom(2m,m) - 1, det = (-1)^(m+1) m! perm_m,
//                           blocks indexed by subset pairs (row and column
//                           symmetries both respected)
//   * equivariant_det(m):   same block structure with wedge signs,
//                           det = (-1)^(m+1) m! det_m
// Quadric pencils:
//   * quadric_half(s):      (s+1) x (s+1), det = sum_j y^1_j y^2_j
//   * quadric_full(M):      (M+1) x (M+1), det = sum_j (y^1_j)^2
// Waring-type decompositions of x_1*...*x_n into powers of linear forms.

#include <string>
#include <vector>

#include "detrep/core.hpp"
#include "detrep/pencil.hpp"
#include "detrep/polynomial.hpp"
#include "detrep/subsets.hpp"

namespace detrep {

inline constexpr int kMaxLevelGradedM = 10;   // n = 2^10 - 1 = 1023
inline constexpr int kMaxPairGradedM = 6;     // n = binom(12,6) - 1 = 923
inline constexpr int kMaxQuadricSize = 512;

namespace detail {

// Shared skeleton of grenet / regular_det: one block per subset size
// 0..m-1, entry at (rank(I u i) in block k+1, rank(I) in block k) for each
// k-subset I and each i not in I, carrying the variable y^{k+1}_i.  The top
// level k = m-1 wraps to the 1-dimensional corner block.  `coeff_fn` supplies
// the entry coefficient, `diag1_sign` the sign of the identity on block 1.
template <class CoeffFn>
PencilMatrix level_graded(const std::string& name, int m, int diag1_sign,
                          CoeffFn&& coeff_fn) {
  PencilMatrix p;
  p.construction = name;
  p.m = m;
  p.n = static_cast<int>((std::uint64_t(1) << m) - 1);
  p.arg_rows = p.arg_cols = m;
  p.scaling_exponent = p.n - m;
  for (int k = 0; k < m; ++k)
    p.layout.blocks.push_back({"level" + std::to_string(k),
                               static_cast<int>(binom(m, k)), k});
  p.init_entries();

  std::vector<int> offs(m);
  for (int k = 0; k < m; ++k) offs[k] = p.layout.offset(k);
  for (int k = 1; k < m; ++k) {
    int sgn = k == 1 ? diag1_sign : 1;
    for (int d = 0; d < p.layout.blocks[k].dim; ++d)
      p.at(offs[k] + d, offs[k] + d) = IntForm(Int(sgn));
  }
  for (int k = 0; k < m; ++k) {
    int row_block = (k + 1) % m;
    for (Subset I : subsets_of_size(m, k)) {
      int col = offs[k] + static_cast<int>(subset_rank(I));
      for (int i = 1; i <= m; ++i) {
        auto J = subset_insert(I, i);
        if (!J) continue;
        int row = k + 1 == m ? 0 : offs[row_block] + static_cast<int>(subset_rank(*J));
        p.at(row, col).add_term({k + 1, i}, Int(coeff_fn(i, I)));
      }
    }
  }
  return p;
}

// Shared skeleton of the pair-graded constructions: block k has one basis
// vector per pair (I, J) of k-subsets, ranked rank(I)*binom(m,k) + rank(J);
// the variable y^i_j maps (I, J) to (I u i, J u j).
template <class CoeffFn>
PencilMatrix pair_graded(const std::string& name, int m, CoeffFn&& coeff_fn) {
  PencilMatrix p;
  p.construction = name;
  p.m = m;
  p.n = static_cast<int>(binom(2 * m, m)) - 1;
  p.arg_rows = p.arg_cols = m;
  p.scaling_exponent = p.n - m;
  for (int k = 0; k < m; ++k) {
    int b = static_cast<int>(binom(m, k));
    p.layout.blocks.push_back({"pairs" + std::to_string(k), b * b, k});
  }
  p.init_entries();

  std::vector<int> offs(m);
  for (int k = 0; k < m; ++k) offs[k] = p.layout.offset(k);
  for (int k = 1; k < m; ++k)
    for (int d = 0; d < p.layout.blocks[k].dim; ++d)
      p.at(offs[k] + d, offs[k] + d) = IntForm(Int(1));
  for (int k = 0; k < m; ++k) {
    auto subsets = subsets_of_size(m, k);
    const int bk = static_cast<int>(binom(m, k));
    const int bk1 = static_cast<int>(binom(m, k + 1));
    for (Subset I : subsets)
      for (Subset J : subsets) {
        int col = offs[k] +
                  static_cast<int>(subset_rank(I)) * bk +
                  static_cast<int>(subset_rank(J));
        for (int i = 1; i <= m; ++i) {
          auto Ii = subset_insert(I, i);
          if (!Ii) continue;
          for (int j = 1; j <= m; ++j) {
            auto Jj = subset_insert(J, j);
            if (!Jj) continue;
            int row = k + 1 == m
                          ? 0
                          : offs[(k + 1) % m] +
                                static_cast<int>(subset_rank(*Ii)) * bk1 +
                                static_cast<int>(subset_rank(*Jj));
            p.at(row, col).add_term({i, j}, Int(coeff_fn(i, I, j, J)));
          }
        }
      }
  }
  return p;
}

}  // namespace detail

// Permanent pencil with column (monomial) symmetry.  With exact_sign the
// identity on block 1 is flipped to (-1)^(m+1) so that det = perm_m on the
// nose; without it det = (-1)^(m+1) perm_m.
inline PencilMatrix grenet(int m, bool exact_sign = true) {
  require(m >= 2 && m <= kMaxLevelGradedM, "grenet: m must be in [2, 10]");
  int flip = (m % 2 == 1) ? 1 : -1;  // (-1)^(m+1)
  PencilMatrix p = detail::level_graded("grenet", m, exact_sign ? flip : 1,
                                        [](int, Subset) { return 1; });
  p.target = Target::Perm;
  p.sign = exact_sign ? 1 : flip;
  p.expected_factor = 1;
  p.check_invariants();
  return p;
}

// Determinant pencil regular at 0, equivariant for the full GL action on
// columns; the chain blocks act by wedging, hence the subset signs.
// det = det_m exactly when m = 1,2 mod 4, and -det_m otherwise.
inline PencilMatrix regular_det(int m) {
  require(m >= 2 && m <= kMaxLevelGradedM, "regular_det: m must be in [2, 10]");
  PencilMatrix p = detail::level_graded(
      "regular-det", m, 1, [](int i, Subset I) { return wedge_sign(i, I); });
  p.target = Target::Det;
  p.sign = (m % 4 == 1 || m % 4 == 2) ? 1 : -1;
  p.expected_factor = 1;
  p.check_invariants();
  return p;
}

// Permanent pencil whose block structure carries both row and column
// symmetries; the price is size binom(2m,m) - 1 and a factor of m!:
// det = (-1)^(m+1) * m! * perm_m.
inline PencilMatrix equivariant_perm(int m) {
  require(m >= 2 && m <= kMaxPairGradedM, "equivariant_perm: m must be in [2, 6]");
  PencilMatrix p = detail::pair_graded("equivariant-perm", m,
                                       [](int, Subset, int, Subset) { return 1; });
  p.target = Target::Perm;
  p.sign = (m % 2 == 1) ? 1 : -1;
  p.expected_factor = factorial(m);
  p.check_invariants();
  return p;
}

// Determinant companion of equivariant_perm: wedge signs on both pair
// components; det = (-1)^(m+1) * m! * det_m.
inline PencilMatrix equivariant_det(int m) {
  require(m >= 2 && m <= kMaxPairGradedM, "equivariant_det: m must be in [2, 6]");
  PencilMatrix p = detail::pair_graded(
      "equivariant-det", m, [](int i, Subset I, int j, Subset J) {
        return wedge_sign(i, I) * wedge_sign(j, J);
      });
  p.target = Target::Det;
  p.sign = (m % 2 == 1) ? 1 : -1;
  p.expected_factor = factorial(m);
  p.check_invariants();
  return p;
}

// Smallest pencil for the split quadric sum_j x_j y_j (x_j := y^1_j,
// y_j := y^2_j):  top row -x, first column y, identity elsewhere.
inline PencilMatrix quadric_half(int s) {
  require(s >= 1 && s <= kMaxQuadricSize, "quadric_half: s out of range");
  PencilMatrix p;
  p.construction = "quadric-half";
  p.m = s;
  p.n = s + 1;
  p.arg_rows = 2;
  p.arg_cols = s;
  p.scaling_exponent = p.n - 2;
  p.target = Target::QuadricHalf;
  p.sign = 1;
  p.expected_factor = 1;
  p.layout.blocks.push_back({"corner", 1, 0});
  p.layout.blocks.push_back({"span", s, 1});
  p.init_entries();
  for (int j = 1; j <= s; ++j) {
    p.at(0, j).add_term({1, j}, Int(-1));
    p.at(j, 0).add_term({2, j}, Int(1));
    p.at(j, j) = IntForm(Int(1));
  }
  p.check_invariants();
  return p;
}

// Pencil for the full quadric sum_j z_j^2 (z_j := y^1_j).
inline PencilMatrix quadric_full(int M) {
  require(M >= 1 && M <= kMaxQuadricSize, "quadric_full: M out of range");
  PencilMatrix p;
  p.construction = "quadric-full";
  p.m = M;
  p.n = M + 1;
  p.arg_rows = 1;
  p.arg_cols = M;
  p.scaling_exponent = p.n - 2;
  p.target = Target::QuadricFull;
  p.sign = 1;
  p.expected_factor = 1;
  p.layout.blocks.push_back({"corner", 1, 0});
  p.layout.blocks.push_back({"span", M, 1});
  p.init_entries();
  for (int j = 1; j <= M; ++j) {
    p.at(0, j).add_term({1, j}, Int(-1));
    p.at(j, 0).add_term({1, j}, Int(1));
    p.at(j, j) = IntForm(Int(1));
  }
  p.check_invariants();
  return p;
}

// ---------------------------------------------------------------------------
// Waring-type decompositions of the monomial x_1*...*x_n (x_j := y^1_j):
//
//   x_1*...*x_n = 1/(2^(n-1) n!) * sum over eps in {+-1}^n with eps_1 = +1
//                 of (prod_k eps_k) * (sum_j eps_j x_j)^n
//
// and the symmetric variant over all 2^n sign vectors with denominator
// 2^n n! (same identity, both half-orbits included).

struct WaringTerm {
  std::vector<int> eps;  // signs of the linear form, eps[0] corresponds to x_1
  int sign = 1;          // prod_k eps_k
};

struct WaringDecomposition {
  int n = 0;
  bool symmetric = false;
  Int denominator;  // 2^(n-1) n!  or  2^n n!
  std::vector<WaringTerm> terms;

  // sum over terms of sign * (sum_j eps_j x_j)^n, which must equal
  // denominator * x_1*...*x_n.
  Polynomial weighted_sum() const {
    Polynomial total;
    for (const auto& t : terms) {
      Polynomial form;
      for (int j = 0; j < n; ++j)
        form += Polynomial::monomial(Monomial::var({1, j + 1}), t.eps[j]);
      total += Polynomial(Int(t.sign)) * form.pow(n);
    }
    return total;
  }

  Polynomial product_monomial() const {
    Monomial mm;
    for (int j = 1; j <= n; ++j) mm = mm * Monomial::var({1, j});
    return Polynomial::monomial(mm, 1);
  }
};

inline WaringDecomposition waring_terms(int n, bool symmetric = false) {
  require(n >= 1 && n <= 20, "waring_terms: n out of range");
  WaringDecomposition w;
  w.n = n;
  w.symmetric = symmetric;
  w.denominator = pow_int(2, symmetric ? n : n - 1) * factorial(n);
  const std::uint64_t count = std::uint64_t(1) << (symmetric ? n : n - 1);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    WaringTerm t;
    t.eps.resize(n, 1);
    // Symmetric: bit j drives eps_{j+1}.  Asymmetric: eps_1 is pinned to +1
    // and bit j drives eps_{j+2}.
    for (int j = 0; j < n; ++j) {
      int bit = symmetric ? j : j - 1;
      if (bit >= 0 && ((mask >> bit) & 1)) t.eps[j] = -1;
    }
    t.sign = 1;
    for (int j = 0; j < n; ++j) t.sign *= t.eps[j];
    w.terms.push_back(std::move(t));
  }
  return w;
}

}  // namespace detrep
