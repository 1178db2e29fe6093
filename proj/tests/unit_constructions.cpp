// The pencil constructions themselves: sizes, block layouts, entry-level
// structure, defining determinant identities (symbolic for small sizes,
// exact random points and chain products above that), quadric pencils, and
// the power-sum decompositions of the product polynomial.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "detrep/constructions.hpp"
#include "detrep/oracles.hpp"
#include "detrep/pencil.hpp"
#include "detrep/subsets.hpp"
#include "detrep/verify.hpp"

using namespace detrep;

namespace {

IntMatrix arg_matrix(const PencilMatrix& p, SplitMix64& rng, long lo = -9,
                     long hi = 9) {
  IntMatrix a(p.arg_rows, p.arg_cols);
  for (int i = 0; i < p.arg_rows; ++i)
    for (int j = 0; j < p.arg_cols; ++j) a.at(i, j) = Int(rng.next_in(lo, hi));
  return a;
}

std::size_t linear_term_count(const PencilMatrix& p) {
  std::size_t c = 0;
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j) c += p.at(i, j).terms().size();
  return c;
}

}  // namespace

TEST_CASE("sizes and block layouts of the graded families") {
  for (int m = 2; m <= 6; ++m) {
    PencilMatrix p = grenet(m);
    CHECK(p.n == (1 << m) - 1);
    CHECK(p.layout.blocks.size() == static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
      CHECK(p.layout.blocks[k].dim == static_cast<int>(binom(m, k)));
    CHECK(p.scaling_exponent == p.n - m);
    CHECK(p.layout.cyclic());
    PencilMatrix r = regular_det(m);
    CHECK(r.n == p.n);
    CHECK(r.arg_rows == m);
  }
  for (int m = 2; m <= 4; ++m) {
    PencilMatrix e = equivariant_perm(m);
    CHECK(e.n == static_cast<int>(binom(2 * m, m)) - 1);
    for (int k = 0; k < m; ++k)
      CHECK(e.layout.blocks[k].dim ==
            static_cast<int>(binom(m, k) * binom(m, k)));
    CHECK(equivariant_det(m).n == e.n);
  }
  CHECK(equivariant_perm(2).n == 5);
  CHECK(equivariant_perm(3).n == 19);
  CHECK(equivariant_perm(4).n == 69);
  // guards
  CHECK_THROWS_AS(grenet(kMaxLevelGradedM + 1), std::invalid_argument);
  CHECK_THROWS_AS(grenet(1), std::invalid_argument);
  CHECK_THROWS_AS(equivariant_perm(kMaxPairGradedM + 1), std::invalid_argument);
  CHECK_THROWS_AS(quadric_half(kMaxQuadricSize + 1), std::invalid_argument);
  CHECK_THROWS_AS(quadric_half(0), std::invalid_argument);
}

TEST_CASE("signs and factors across the families") {
  // permanent pencil: exact variant always +1, plain variant (-1)^(m+1)
  for (int m = 2; m <= 6; ++m) {
    CHECK(grenet(m).sign == 1);
    CHECK(grenet(m).expected_factor == 1);
    CHECK(grenet(m, false).sign == (m % 2 == 1 ? 1 : -1));
  }
  // determinant pencil: +1 exactly when m = 1, 2 mod 4
  CHECK(regular_det(2).sign == 1);
  CHECK(regular_det(3).sign == -1);
  CHECK(regular_det(4).sign == -1);
  CHECK(regular_det(5).sign == 1);
  CHECK(regular_det(6).sign == 1);
  CHECK(regular_det(7).sign == -1);
  // pair-graded: sign (-1)^(m+1), factor m!
  for (int m = 2; m <= 5; ++m) {
    CHECK(equivariant_perm(m).sign == (m % 2 == 1 ? 1 : -1));
    CHECK(equivariant_perm(m).expected_factor == factorial(m));
    CHECK(equivariant_det(m).sign == equivariant_perm(m).sign);
    CHECK(equivariant_det(m).expected_factor == factorial(m));
  }
}

TEST_CASE("nonzero structure counts match the subset-insertion formulas") {
  // level-graded: one term per (k-subset I, element i not in I), i.e.
  //   sum_k binom(m,k) (m-k) = m 2^(m-1)
  for (int m = 2; m <= 7; ++m) {
    CHECK(linear_term_count(grenet(m)) ==
          static_cast<std::size_t>(m) << (m - 1));
    CHECK(linear_term_count(regular_det(m)) == linear_term_count(grenet(m)));
  }
  // pair-graded: sum_k binom(m,k)^2 (m-k)^2
  for (int m = 2; m <= 4; ++m) {
    std::size_t expect = 0;
    for (int k = 0; k < m; ++k)
      expect += static_cast<std::size_t>(binom(m, k) * binom(m, k)) *
                static_cast<std::size_t>((m - k) * (m - k));
    CHECK(linear_term_count(equivariant_perm(m)) == expect);
    CHECK(linear_term_count(equivariant_det(m)) == expect);
  }
}

TEST_CASE("entry-level structure: subset ranks, variables, wedge signs") {
  // Rebuild the expected entry positions independently and compare both
  // level-graded pencils entry by entry.
  for (int m = 2; m <= 5; ++m) {
    PencilMatrix g = grenet(m);
    PencilMatrix r = regular_det(m);
    std::size_t seen = 0;
    for (int k = 0; k < m; ++k) {
      int coff = g.layout.offset(k);
      for (Subset I : subsets_of_size(m, k)) {
        int col = coff + static_cast<int>(subset_rank(I));
        for (int i = 1; i <= m; ++i) {
          auto J = subset_insert(I, i);
          if (!J) continue;
          int row = (k + 1 == m)
                        ? 0
                        : g.layout.offset(k + 1) + static_cast<int>(subset_rank(*J));
          Variable v{k + 1, i};
          // the permanent pencil carries the variable with coefficient +1
          Int cg = 0, cr = 0;
          for (auto& t : g.at(row, col).terms())
            if (t.var == v) cg = t.coeff;
          for (auto& t : r.at(row, col).terms())
            if (t.var == v) cr = t.coeff;
          CHECK(cg == 1);
          CHECK(cr == wedge_sign(i, I));
          ++seen;
        }
      }
    }
    CHECK(seen == linear_term_count(g));
  }
}

TEST_CASE("defining identity, symbolically where the expansion is feasible") {
  for (int m = 2; m <= 3; ++m) {
    CHECK(identity_symbolic(grenet(m)).pass);
    CHECK(identity_symbolic(grenet(m, false)).pass);
    CHECK(identity_symbolic(regular_det(m)).pass);
  }
  CHECK(identity_symbolic(equivariant_perm(2)).pass);
  CHECK(identity_symbolic(equivariant_det(2)).pass);
  CHECK(identity_symbolic(grenet(4)).pass);       // n = 15
  CHECK(identity_symbolic(regular_det(4)).pass);  // n = 15
}

TEST_CASE("defining identity via chain product and random points, m = 4..5") {
  for (int m = 4; m <= 5; ++m) {
    CHECK(identity_path_symbolic(grenet(m)).pass);
    CHECK(identity_path_symbolic(regular_det(m)).pass);
  }
  CHECK(identity_path_symbolic(equivariant_perm(3)).pass);
  CHECK(identity_path_symbolic(equivariant_det(3)).pass);
  for (auto& p : {grenet(5), regular_det(5), equivariant_perm(3), equivariant_det(3)})
    CHECK(identity_points(p, 4, 2025).pass);
}

TEST_CASE("the permanent identity holds exactly: det = perm at integer points") {
  SplitMix64 rng(314);
  for (int m = 2; m <= 5; ++m) {
    PencilMatrix p = grenet(m);
    for (int t = 0; t < 4; ++t) {
      IntMatrix a = arg_matrix(p, rng);
      CHECK(det_exact(pencil_eval(p, a)) == perm_ryser(a));
    }
    // the plain variant needs its global sign
    PencilMatrix q = grenet(m, false);
    IntMatrix a = arg_matrix(q, rng);
    CHECK(det_exact(pencil_eval(q, a)) == Int(q.sign) * perm_ryser(a));
  }
}

TEST_CASE("the determinant identity holds exactly, including the sign rule") {
  SplitMix64 rng(2718);
  for (int m = 2; m <= 5; ++m) {
    PencilMatrix p = regular_det(m);
    for (int t = 0; t < 4; ++t) {
      IntMatrix a = arg_matrix(p, rng);
      CHECK(det_exact(pencil_eval(p, a)) == Int(p.sign) * det_exact(a));
    }
  }
}

TEST_CASE("the pair-graded identities carry the m! factor") {
  SplitMix64 rng(161803);
  for (int m = 2; m <= 4; ++m) {
    PencilMatrix p = equivariant_perm(m);
    PencilMatrix d = equivariant_det(m);
    IntMatrix a = arg_matrix(p, rng);
    CHECK(det_exact(pencil_eval(p, a)) ==
          Int(p.sign) * factorial(m) * perm_ryser(a));
    CHECK(det_exact(pencil_eval(d, a)) ==
          Int(d.sign) * factorial(m) * det_exact(a));
  }
}

TEST_CASE("regularity: the constant part always has rank n - 1") {
  for (auto& p : {grenet(2), grenet(5), grenet(6), regular_det(4), regular_det(6),
                  equivariant_perm(3), equivariant_det(3), quadric_half(7),
                  quadric_full(9)})
    CHECK(check_regularity(p).pass);
}

TEST_CASE("quadric pencils: symbolic determinants and ranks") {
  for (int s = 1; s <= 5; ++s) {
    PencilMatrix h = quadric_half(s);
    CHECK(h.n == s + 1);
    CHECK(h.arg_rows == 2);
    CHECK(h.arg_cols == s);
    Polynomial want;
    for (int j = 1; j <= s; ++j)
      want += Polynomial::monomial(Monomial::var({1, j}) * Monomial::var({2, j}), 1);
    CHECK(pencil_symbolic_det(h) == want);

    PencilMatrix f = quadric_full(s);
    CHECK(f.n == s + 1);
    CHECK(f.arg_rows == 1);
    CHECK(f.arg_cols == s);
    Polynomial wf;
    for (int j = 1; j <= s; ++j)
      wf += Polynomial::monomial(Monomial::var({1, j}, 2), 1);
    CHECK(pencil_symbolic_det(f) == wf);
  }
  // a large instance evaluates exactly: det = sum x_j^2 at a point
  PencilMatrix big = quadric_full(100);
  SplitMix64 rng(55);
  IntMatrix x = arg_matrix(big, rng, -99, 99);
  Int expect = 0;
  for (int j = 0; j < 100; ++j) expect += x.at(0, j) * x.at(0, j);
  CHECK(det_exact(pencil_eval(big, x)) == expect);
  CHECK(check_regularity(big).pass);
}

TEST_CASE("scaling the identity block trades the m! factor for a real root") {
  // Every determinant monomial of a cyclic pencil uses the full variable
  // cycle (m linear entries) and n - m diagonal ones, so replacing the
  // constant part L by lambda L scales det by lambda^(n-m).  Choosing
  // lambda = (m!)^(-1/(n-m)) cancels the m! factor in floating point.
  for (int m = 2; m <= 3; ++m) {
    PencilMatrix p = equivariant_perm(m);
    const int n = p.n;
    REQUIRE(p.scaling_exponent == n - m);
    double lambda =
        std::pow(factorial(m).get_d(), -1.0 / static_cast<double>(n - m));
    SplitMix64 rng(42 + m);
    IntMatrix a = arg_matrix(p, rng, -3, 3);
    // evaluate with the scaled constant part in doubles
    std::vector<std::vector<double>> mat(n, std::vector<double>(n, 0.0));
    IntMatrix linear_only = pencil_eval(p, a);  // constants + linear part
    IntMatrix constants = p.constant_part();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        mat[i][j] = Int(linear_only.at(i, j) - constants.at(i, j)).get_d() +
                    lambda * constants.at(i, j).get_d();
    // LU with partial pivoting
    double det = 1.0;
    for (int c = 0; c < n; ++c) {
      int piv = c;
      for (int r = c + 1; r < n; ++r)
        if (std::abs(mat[r][c]) > std::abs(mat[piv][c])) piv = r;
      if (piv != c) {
        std::swap(mat[piv], mat[c]);
        det = -det;
      }
      REQUIRE(std::abs(mat[c][c]) > 1e-12);
      det *= mat[c][c];
      for (int r = c + 1; r < n; ++r) {
        double f = mat[r][c] / mat[c][c];
        for (int k = c; k < n; ++k) mat[r][k] -= f * mat[c][k];
      }
    }
    double expect = static_cast<double>(p.sign) * perm_ryser(a).get_d();
    CHECK(std::abs(det - expect) <=
          1e-9 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("power-sum decompositions: term counts and denominators") {
  for (int n = 1; n <= 10; ++n) {
    WaringDecomposition w = waring_terms(n);
    CHECK(w.terms.size() == (std::size_t(1) << (n - 1)));
    CHECK(w.denominator == pow_int(2, n - 1) * factorial(n));
    for (auto& t : w.terms) CHECK(t.eps[0] == 1);  // pinned first sign

    WaringDecomposition s = waring_terms(n, true);
    CHECK(s.terms.size() == (std::size_t(1) << n));
    CHECK(s.denominator == pow_int(2, n) * factorial(n));
  }
  CHECK_THROWS_AS(waring_terms(0), std::invalid_argument);
  CHECK_THROWS_AS(waring_terms(21), std::invalid_argument);
}

TEST_CASE("power-sum decompositions: the polynomial identity itself") {
  for (int n = 1; n <= 6; ++n) {
    WaringDecomposition w = waring_terms(n);
    CHECK(w.weighted_sum() == w.product_monomial() * w.denominator);
    WaringDecomposition s = waring_terms(n, true);
    CHECK(s.weighted_sum() == s.product_monomial() * s.denominator);
  }
  // spot check n = 7..8 numerically instead of expanding the power sums
  SplitMix64 rng(808);
  for (int n = 7; n <= 8; ++n) {
    for (bool sym : {false, true}) {
      WaringDecomposition w = waring_terms(n, sym);
      std::vector<Int> x(n);
      Int prod = 1;
      for (int j = 0; j < n; ++j) {
        x[j] = Int(rng.next_in(-9, 9));
        prod *= x[j];
      }
      Int total = 0;
      for (auto& t : w.terms) {
        Int form = 0;
        for (int j = 0; j < n; ++j) form += Int(t.eps[j]) * x[j];
        total += Int(t.sign) * pow_int(form, n);
      }
      CHECK(total == w.denominator * prod);
    }
  }
}
