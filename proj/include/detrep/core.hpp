#pragma once

// Exact scalar types, small combinatorial helpers and the deterministic RNG
// shared by the whole library.  Integers are GMP bignums (Int), rationals are
// always kept canonicalized (Rat).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace detrep {

using Int = mpz_class;
using Rat = mpq_class;

// Internal invariant check: stays active in release builds.
#define DETREP_CHECK(cond, msg)                                              \
  do {                                                                       \
    if (!(cond)) throw std::logic_error(std::string("detrep internal: ") + (msg)); \
  } while (0)

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

// mpq_class does not canonicalize values passed to its constructor, so every
// direct num/den construction goes through here.
inline Rat rat(const Int& num, const Int& den = 1) {
  require(den != 0, "rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}
inline Rat rat(long num, long den = 1) { return rat(Int(num), Int(den)); }

inline Int factorial(unsigned m) {
  Int r = 1;
  for (unsigned i = 2; i <= m; ++i) r *= static_cast<unsigned long>(i);
  return r;
}

// Binomial coefficient as a machine word; valid for n <= 64 (largest value
// used here is binom(64,32) < 2^63).
inline std::uint64_t binom(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact at every step
  }
  DETREP_CHECK(r <= ~std::uint64_t(0), "binom overflow");
  return static_cast<std::uint64_t>(r);
}

inline Int binom_big(unsigned n, unsigned k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// SplitMix64: tiny, fully deterministic, identical across platforms.  All
// randomized tests, PIT trials and benchmarks derive their streams from it.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform-ish value in [lo, hi] (inclusive).  Modulo bias is irrelevant for
  // the test/benchmark workloads; determinism is what matters.
  long next_in(long lo, long hi) {
    DETREP_CHECK(lo <= hi, "next_in: empty range");
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

 private:
  std::uint64_t state_;
};

}  // namespace detrep
