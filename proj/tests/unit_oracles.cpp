// Reference evaluators for the permanent and determinant: expansion over all
// permutations, the Gray-coded +-1 folding formula for the permanent (exact
// division asserted), modular variants, and the symbolic generic-matrix
// polynomials.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "detrep/core.hpp"
#include "detrep/modular.hpp"
#include "detrep/oracles.hpp"

using namespace detrep;

namespace {

IntMatrix random_int_matrix(SplitMix64& rng, int n, long lo = -9, long hi = 9) {
  IntMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.at(i, j) = Int(rng.next_in(lo, hi));
  return a;
}

IntMatrix ones(int n) {
  IntMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.at(i, j) = 1;
  return a;
}

}  // namespace

TEST_CASE("hand-checked 2x2 and 3x3 values") {
  IntMatrix a(2, 2);
  a.at(0, 0) = 1; a.at(0, 1) = 2;
  a.at(1, 0) = 3; a.at(1, 1) = 4;
  CHECK(perm_naive(a) == 10);   // 1*4 + 2*3
  CHECK(det_naive(a) == -2);    // 1*4 - 2*3
  CHECK(perm_ryser(a) == 10);
  CHECK(det_exact(a) == -2);

  IntMatrix b(3, 3);
  int v = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b.at(i, j) = v++;
  // perm([[1,2,3],[4,5,6],[7,8,9]]) = 1*5*9+1*6*8+2*4*9+2*6*7+3*4*8+3*5*7 = 450
  CHECK(perm_naive(b) == 450);
  CHECK(perm_ryser(b) == 450);
  CHECK(det_naive(b) == 0);
}

TEST_CASE("permanent of the all-ones matrix is m! for m <= 12") {
  for (int m = 1; m <= 12; ++m) CHECK(perm_ryser(ones(m)) == factorial(m));
  // identity has permanent 1, a zero row kills it
  CHECK(perm_ryser(IntMatrix::identity(9)) == 1);
  IntMatrix z = ones(5);
  for (int j = 0; j < 5; ++j) z.at(2, j) = 0;
  CHECK(perm_ryser(z) == 0);
}

TEST_CASE("folding formula matches expansion on 500 seeded matrices, m <= 7") {
  SplitMix64 rng(2024);
  for (int t = 0; t < 500; ++t) {
    int m = 1 + static_cast<int>(rng.next() % 7);
    IntMatrix a = random_int_matrix(rng, m, -9, 9);
    CHECK(perm_ryser(a) == perm_naive(a));
  }
}

TEST_CASE("gray code does exactly 2^(m-1) - 1 sign flips") {
  for (int m = 1; m <= 11; ++m) {
    RyserStats st;
    perm_ryser(ones(m), &st);
    CHECK(st.flips == (1ULL << (m - 1)) - 1);
    // Each sign flip updates every column sum exactly once.
    CHECK(st.column_ops == st.flips * m);
  }
}

TEST_CASE("expansion oracle is guarded") {
  CHECK_THROWS_AS(perm_naive(ones(kNaiveGuard + 1)), std::invalid_argument);
  CHECK_THROWS_AS(det_naive(ones(kNaiveGuard + 1)), std::invalid_argument);
}

TEST_CASE("permanent mod p agrees with the exact permanent") {
  SplitMix64 rng(31337);
  for (std::uint64_t p : kPitPrimes)
    for (int t = 0; t < 30; ++t) {
      int m = 2 + static_cast<int>(rng.next() % 5);
      IntMatrix a = random_int_matrix(rng, m, -50, 50);
      ModMatrix am(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) am.at(i, j) = mod_of(a.at(i, j), p);
      CHECK(perm_mod_p(am, p) == mod_of(perm_ryser(a), p));
    }
}

TEST_CASE("symbolic permanent and determinant of the generic matrix") {
  Polynomial p2 = perm_symbolic(2);
  Polynomial d2 = det_symbolic(2);
  Monomial diag = Monomial::var({1, 1}) * Monomial::var({2, 2});
  Monomial anti = Monomial::var({1, 2}) * Monomial::var({2, 1});
  CHECK(p2.coeff(diag) == 1);
  CHECK(p2.coeff(anti) == 1);
  CHECK(d2.coeff(diag) == 1);
  CHECK(d2.coeff(anti) == -1);

  for (int m = 1; m <= 5; ++m) {
    Polynomial pm = perm_symbolic(m);
    Polynomial dm = det_symbolic(m);
    CHECK(pm.terms().size() == static_cast<std::size_t>(factorial(m).get_ui()));
    CHECK(dm.terms().size() == pm.terms().size());
    // Evaluating the symbolic forms at a random matrix matches the evaluators.
    SplitMix64 rng(500 + m);
    IntMatrix a = random_int_matrix(rng, m);
    auto point = [&](Variable v) { return a.at(v.up - 1, v.lo - 1); };
    CHECK(pm.eval(point) == perm_naive(a));
    CHECK(dm.eval(point) == det_naive(a));
    // All coefficients of the permanent are +1; the determinant's are +-1.
    for (auto& [mono, c] : pm.terms()) CHECK(c == 1);
    for (auto& [mono, c] : dm.terms()) CHECK((c == 1 || c == -1));
  }
}

TEST_CASE("permanent is row-swap invariant, determinant alternates") {
  SplitMix64 rng(77);
  for (int t = 0; t < 50; ++t) {
    int m = 2 + static_cast<int>(rng.next() % 4);
    IntMatrix a = random_int_matrix(rng, m);
    IntMatrix s = a;
    for (int j = 0; j < m; ++j) std::swap(s.at(0, j), s.at(1, j));
    CHECK(perm_ryser(s) == perm_ryser(a));
    CHECK(det_naive(s) == -det_naive(a));
    // transpose invariance of both
    CHECK(perm_ryser(a.transpose()) == perm_ryser(a));
    CHECK(det_naive(a.transpose()) == det_naive(a));
  }
}

TEST_CASE("large single-shot cross-check at m = 10") {
  SplitMix64 rng(99);
  IntMatrix a = random_int_matrix(rng, 10, -4, 4);
  CHECK(perm_ryser(a) == perm_naive(a));  // 10! = 3.6M products, still fine
}
