#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace kurepa {

/// Arbitrary-precision integer. All values in this module are nonnegative and exact.
using ArbInt = mpz_class;

/// delta_n: 1 for even n (so delta_0 = 1), 0 for odd n.
struct ParityDelta {
  std::uint64_t n;
  unsigned value;
};

constexpr ParityDelta parity_delta(std::uint64_t n) noexcept { return {n, (n & 1) ? 0u : 1u}; }

ArbInt factorial(std::uint64_t n);

/// K(n) = 0! + 1! + ... + (n-1)!, K(0) = 0.
ArbInt left_factorial(std::uint64_t n);
std::vector<ArbInt> left_factorial_prefix(std::uint64_t n_max);

/// Derangement count S(n) by S(n) = n S(n-1) + (-1)^n, S(0) = 1.
ArbInt subfactorial(std::uint64_t n);
std::vector<ArbInt> subfactorial_prefix(std::uint64_t n_max);

/// S(n) by S(n) = (n-1)(S(n-1) + S(n-2)) seeded with S(0) = 1, S(1) = 0.
ArbInt subfactorial_alt(std::uint64_t n);
std::vector<ArbInt> subfactorial_alt_prefix(std::uint64_t n_max);

/// Bell numbers by B_{n+1} = sum_k C(n,k) B_k, B_0 = 1.
ArbInt bell(std::uint64_t n);
std::vector<ArbInt> bell_prefix(std::uint64_t n_max);

/// floor(n!/e) without floating point.
///
/// n!/e = sum_{k>=0} (-1)^k n!/k!. The terms with k <= n sum to S(n); the tail
/// sum_{k>n} (-1)^k n!/k! has sign (-1)^(n+1), and its magnitude rho_n lies
/// strictly between 0 and 1 because the tail alternates with decreasing terms
/// led by 1/(n+1) <= 1 (for n = 0 the tail is 1/e - 1, magnitude 1 - 1/e).
/// Hence n!/e = S(n) + (-1)^(n+1) rho_n, so the floor is S(n) - 1 for even n
/// and S(n) for odd n, i.e. floor(n!/e) = S(n) - delta_n.
ArbInt floor_fact_over_e(std::uint64_t n);
std::vector<ArbInt> floor_fact_over_e_prefix(std::uint64_t n_max);

inline constexpr unsigned kDerangementOracleMax = 8;
inline constexpr unsigned kPartitionOracleMax = 6;

/// Counts fixpoint-free permutations of n elements by enumeration.
/// Throws OutOfOracleRange for n > 8.
ArbInt derangements_bruteforce(unsigned n);

/// Counts set partitions of an n-set by enumerating restricted growth strings.
/// Throws OutOfOracleRange for n > 6.
ArbInt set_partitions_bruteforce(unsigned n);

}  // namespace kurepa
