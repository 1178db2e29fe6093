#pragma once

// Reference evaluators for permanents and determinants.  perm_naive and
// det_naive enumerate permutations (guarded); perm_ryser is the
// sign-alternating O(2^m * m) evaluator with Gray-code column-sum updates.
// The two permanent routes are deliberately independent so they can
// cross-check each other.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "detrep/core.hpp"
#include "detrep/matrix.hpp"
#include "detrep/modular.hpp"
#include "detrep/polynomial.hpp"

namespace detrep {

inline constexpr int kNaiveGuard = 10;

namespace detail {
template <class Acc>
void for_each_permutation(int m, Acc&& acc) {
  std::vector<int> sigma(m);
  std::iota(sigma.begin(), sigma.end(), 0);
  int sign = 1;
  // next_permutation with parity tracking via explicit transposition count
  // would be fussy; recompute the sign from inversions instead (m <= 10).
  do {
    int inv = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (sigma[i] > sigma[j]) ++inv;
    sign = (inv & 1) ? -1 : 1;
    acc(sigma, sign);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}
}  // namespace detail

inline Int perm_naive(const IntMatrix& a) {
  require(a.rows() == a.cols(), "perm_naive: non-square matrix");
  const int m = a.rows();
  require(m <= kNaiveGuard, "perm_naive: guarded to m <= 10");
  if (m == 0) return 1;
  Int total = 0;
  detail::for_each_permutation(m, [&](const std::vector<int>& sigma, int) {
    Int prod = 1;
    for (int i = 0; i < m; ++i) prod *= a(i, sigma[i]);
    total += prod;
  });
  return total;
}

inline Int det_naive(const IntMatrix& a) {
  require(a.rows() == a.cols(), "det_naive: non-square matrix");
  const int m = a.rows();
  require(m <= kNaiveGuard, "det_naive: guarded to m <= 10");
  if (m == 0) return 1;
  Int total = 0;
  detail::for_each_permutation(m, [&](const std::vector<int>& sigma, int sign) {
    Int prod = sign;
    for (int i = 0; i < m; ++i) prod *= a(i, sigma[i]);
    total += prod;
  });
  return total;
}

struct RyserStats {
  std::uint64_t flips = 0;       // Gray-code sign flips performed
  std::uint64_t column_ops = 0;  // bignum column-sum updates
};

// perm(a) = 2^(1-m) * sum over delta in {+-1}^m, delta_1 = +1, of
//           prod_k delta_k * prod_j (sum_i delta_i * a_ij).
// The delta vectors walk a Gray code, so each step flips exactly one sign
// and touches each column sum once.  The final division by 2^(m-1) must be
// exact; that is asserted, not assumed.
inline Int perm_ryser(const IntMatrix& a, RyserStats* stats = nullptr) {
  require(a.rows() == a.cols(), "perm_ryser: non-square matrix");
  const int m = a.rows();
  require(m >= 1 && m <= 62, "perm_ryser: m out of range");
  std::vector<Int> colsum(m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) colsum[j] += a(i, j);

  Int total = 0;
  int delta_prod = 1;
  std::vector<int> delta(m, 1);
  RyserStats local;
  const std::uint64_t steps = std::uint64_t(1) << (m - 1);
  for (std::uint64_t g = 0;; ++g) {
    Int term = delta_prod;
    for (int j = 0; j < m; ++j) term *= colsum[j];
    total += term;
    if (g + 1 == steps) break;
    // Flip delta_{i+2} where i is the lowest set bit position of g+1
    // (delta_1 stays +1 throughout).
    int i = std::countr_zero(g + 1) + 1;
    DETREP_CHECK(i >= 1 && i < m, "perm_ryser: gray code escaped range");
    delta[i] = -delta[i];
    delta_prod = -delta_prod;
    ++local.flips;
    Int twice;  // 2 * (old sign) * a(i, j), subtracted from each column sum
    for (int j = 0; j < m; ++j) {
      twice = a(i, j) * 2;
      if (delta[i] == 1) colsum[j] += twice;
      else colsum[j] -= twice;
      ++local.column_ops;
    }
  }
  Int denom = pow_int(2, m - 1);
  DETREP_CHECK(mpz_divisible_p(total.get_mpz_t(), denom.get_mpz_t()),
               "perm_ryser: alternating sum not divisible by 2^(m-1)");
  Int result;
  mpz_divexact(result.get_mpz_t(), total.get_mpz_t(), denom.get_mpz_t());
  if (stats) *stats = local;
  return result;
}

// Same evaluator over F_p (for randomized identity tests).
inline std::uint64_t perm_mod_p(const ModMatrix& a, std::uint64_t p) {
  require(a.rows() == a.cols(), "perm_mod_p: non-square matrix");
  const int m = a.rows();
  require(m >= 1 && m <= 62, "perm_mod_p: m out of range");
  std::vector<std::uint64_t> colsum(m, 0);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) colsum[j] = addmod(colsum[j], a(i, j) % p, p);
  std::uint64_t total = 0;
  bool negative = false;
  std::vector<int> delta(m, 1);
  const std::uint64_t steps = std::uint64_t(1) << (m - 1);
  for (std::uint64_t g = 0;; ++g) {
    std::uint64_t term = 1 % p;
    for (int j = 0; j < m; ++j) term = mulmod(term, colsum[j], p);
    total = negative ? submod(total, term, p) : addmod(total, term, p);
    if (g + 1 == steps) break;
    int i = std::countr_zero(g + 1) + 1;
    delta[i] = -delta[i];
    negative = !negative;
    for (int j = 0; j < m; ++j) {
      std::uint64_t twice = addmod(a(i, j) % p, a(i, j) % p, p);
      colsum[j] = delta[i] == 1 ? addmod(colsum[j], twice, p)
                                : submod(colsum[j], twice, p);
    }
  }
  return mulmod(total, invmod(powmod(2, m - 1, p), p), p);
}

// Symbolic targets: the permanent and determinant of the generic m x m
// matrix (y^i_j) as polynomials.
inline Polynomial perm_symbolic(int m) {
  require(m >= 1 && m <= kNaiveGuard, "perm_symbolic: guarded to m <= 10");
  Polynomial total;
  detail::for_each_permutation(m, [&](const std::vector<int>& sigma, int) {
    Monomial mm;
    for (int i = 0; i < m; ++i) mm = mm * Monomial::var({i + 1, sigma[i] + 1});
    total += Polynomial::monomial(mm, 1);
  });
  return total;
}

inline Polynomial det_symbolic(int m) {
  require(m >= 1 && m <= kNaiveGuard, "det_symbolic: guarded to m <= 10");
  Polynomial total;
  detail::for_each_permutation(m, [&](const std::vector<int>& sigma, int sign) {
    Monomial mm;
    for (int i = 0; i < m; ++i) mm = mm * Monomial::var({i + 1, sigma[i] + 1});
    total += Polynomial::monomial(mm, sign);
  });
  return total;
}

}  // namespace detrep
