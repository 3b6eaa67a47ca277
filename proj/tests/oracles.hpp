#pragma once

// Independent ground truth for the tests: brute force, exact rationals and
// direct definitions. Nothing here calls the code paths it is used to check.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>

namespace oracle {

using u64 = std::uint64_t;

/// Exponent of p in n!, by dividing every factor 1..n.
inline u64 factor_count(u64 p, u64 n) {
  u64 total = 0;
  for (u64 k = 2; k <= n; ++k) {
    for (u64 v = k; v % p == 0; v /= p) ++total;
  }
  return total;
}

inline mpz_class fact(u64 n) {
  mpz_class f = 1;
  for (u64 k = 2; k <= n; ++k) f *= static_cast<unsigned long>(k);
  return f;
}

/// K(n) straight from its definition, each factorial rebuilt from scratch.
inline mpz_class left_factorial(u64 n) {
  mpz_class sum = 0;
  for (u64 k = 0; k < n; ++k) sum += fact(k);
  return sum;
}

/// n! * sum_{k<=n} (-1)^k / k! in exact rationals.
inline mpq_class derangements_rational(u64 n) {
  mpq_class sum = 0;
  for (u64 k = 0; k <= n; ++k) {
    mpq_class term(1, 1);
    term /= fact(k);
    if (k & 1)
      sum -= term;
    else
      sum += term;
  }
  sum *= fact(n);
  sum.canonicalize();
  return sum;
}

/// floor(n!/e) from the truncated series sum_{k=0}^{n+extra} (-1)^k n!/k!.
/// The omitted tail is below n!/(n+extra+1)!; the floor is accepted only when
/// the truncated value sits farther than that from every integer.
inline mpz_class floor_fact_over_e_series(u64 n, u64 extra = 40) {
  const u64 terms = n + extra;
  mpq_class sum = 0;
  const mpz_class nf = fact(n);
  for (u64 k = 0; k <= terms; ++k) {
    mpq_class term(nf, fact(k));
    term.canonicalize();
    if (k & 1)
      sum -= term;
    else
      sum += term;
  }
  const mpq_class err_bound(nf, fact(terms + 1));
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), sum.get_num_mpz_t(), sum.get_den_mpz_t());
  const mpq_class frac = sum - mpq_class(fl);
  if (frac <= err_bound || frac >= 1 - err_bound) throw std::runtime_error("series truncation too coarse");
  return fl;
}

/// C(n, k) exactly.
inline mpz_class binom(u64 n, u64 k) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n, k);
  return c;
}

/// Minimal l with p^r | (l p)! by factor counting.
inline u64 l_r(u64 p, u64 r) {
  for (u64 l = 1;; ++l) {
    if (factor_count(p, l * p) >= r) return l;
  }
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline u64 mod(const mpz_class& v, u64 m) { return mpz_fdiv_ui(v.get_mpz_t(), m); }

/// Signed integer mod m, in [0, m).
inline u64 smod(long long v, u64 m) {
  long long r = v % static_cast<long long>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<long long>(m) : r);
}

}  // namespace oracle
