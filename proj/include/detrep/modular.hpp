#pragma once

// Arithmetic modulo word-sized primes, used by the randomized identity tests
// (polynomial identity testing needs determinants over F_p, not over Z).

#include <array>
#include <cstdint>

#include "detrep/core.hpp"

namespace detrep {

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  a += b;
  if (a >= p || a < b) a -= p;  // a < 2^63 in practice, the carry branch is for safety
  return a;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Inverse modulo a prime (Fermat).
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  require(a % p != 0, "invmod of zero residue");
  return powmod(a, p - 2, p);
}

// Deterministic Miller-Rabin, valid for every n < 2^64 with this base set.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Default primes for identity testing: the Mersenne prime 2^61 - 1 and the
// two largest primes below 2^61.
inline constexpr std::array<std::uint64_t, 3> kPitPrimes = {
    2305843009213693951ULL, 2305843009213693921ULL, 2305843009213693907ULL};

// Nonnegative residue of a bignum.
inline std::uint64_t mod_of(const Int& v, std::uint64_t p) {
  // mpz_fdiv_ui floors, so the remainder of a negative value is already the
  // nonnegative representative.
  return mpz_fdiv_ui(v.get_mpz_t(), p);
}

inline std::uint64_t mod_of(const Rat& v, std::uint64_t p) {
  std::uint64_t num = mod_of(Int(v.get_num()), p);
  std::uint64_t den = mod_of(Int(v.get_den()), p);
  return mulmod(num, invmod(den, p), p);
}

}  // namespace detrep
