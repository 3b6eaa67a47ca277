#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kurepa/check.hpp"
#include "kurepa/modular.hpp"

namespace kurepa {

/// Bell numbers B_0 .. B_{count-1} mod m. Small moduli go through the batched
/// kernel; larger ones through a 64-bit Bell triangle.
std::vector<u64> bell_mod(u64 m, u64 count);

/// Residue tables mod a prime p: K(n), n!, S(n) for n <= p, inverse
/// factorials for n < p, and Bell numbers for the requested count.
class PrimeTables {
 public:
  /// Requires bell_count >= p + 1 for the Bell checks that touch B_p.
  PrimeTables(u64 p, u64 bell_count);
  PrimeTables(u64 p, std::vector<u64> bell_residues);

  u64 prime() const noexcept { return mod_.value(); }
  const Modulus& modulus() const noexcept { return mod_; }

  u64 left_factorial(u64 n) const { return k_.at(n); }
  u64 factorial(u64 n) const { return fact_.at(n); }
  u64 inverse_factorial(u64 n) const { return inv_fact_.at(n); }
  u64 subfactorial(u64 n) const { return s_.at(n); }
  u64 bell(u64 n) const { return bell_.at(n); }
  u64 bell_count() const noexcept { return bell_.size(); }

 private:
  Modulus mod_;
  std::vector<u64> k_, fact_, inv_fact_, s_, bell_;
};

// Prime-indexed checks. Each names its family in CheckResult::name.

/// Alternating sums of Bell and subfactorial values up to p vanish mod p;
/// B_p = 2 and S(p) = -1 (mod p). Four results.
std::vector<CheckResult> check_lemma_alt_sums(const PrimeTables& t);
/// B_{n+p} - B_{n+1} - B_n = 0 (mod p).
CheckResult check_touchard(const PrimeTables& t, u64 n);
/// K(p) = B_{p-1} - 1 (mod p).
CheckResult check_bell_kurepa_link(const PrimeTables& t);
/// (p-k)! = (-1)^k / (k-1)! (mod p), 1 <= k <= p.
CheckResult check_wilson_shift(const PrimeTables& t, u64 k);
/// K(p) - K(p-l) = -S(l-1)/(l-1)! (mod p), 1 <= l <= p.
CheckResult check_diff_lemma(const PrimeTables& t, u64 l);
/// l! K(p-1-l) != floor(l!/e) + delta_l (mod p), 0 <= l < p. MustFail.
CheckResult check_corollary_kh_ks(const PrimeTables& t, u64 l);
/// K(p) != 0 (mod p). MustFail.
CheckResult check_kh_prime(const PrimeTables& t);

std::vector<CheckResult> check_lemma_alt_sums(u64 p);
CheckResult check_touchard(u64 p, u64 n);
CheckResult check_bell_kurepa_link(u64 p);
CheckResult check_wilson_shift(u64 p, u64 k);
CheckResult check_diff_lemma(u64 p, u64 l);
CheckResult check_corollary_kh_ks(u64 p, u64 l);

// n-indexed checks, all mod n (n = 1 is trivially congruent).

/// K(n) = (-1)^(n-1) S(n-1) (mod n). Streams residues; no big integers.
CheckResult check_lemma_2_1(u64 n);
/// K(n) = (-1)^(n-1) floor((n-1)!/e) + delta_{n-1} (mod n).
CheckResult check_corollary_floor(u64 n);
/// floor(n!/e) = -delta_{n-1} (mod n).
CheckResult check_floor_identity(u64 n);
/// floor(n!/e) - floor((n-1)!/e) = 0 (mod n) exactly for n = 1, 2; MustFail above.
CheckResult check_kh_floor_diff(u64 n);

/// Above this n the floor checks reduce S(n) - delta_n from streamed residues
/// instead of exact floor(n!/e).
inline constexpr u64 kExactFloorMax = 2000;

/// Primes up to this bound get every l and k; larger primes a fixed sample.
inline constexpr u64 kFullRangePrimeMax = 300;

/// Family names accepted by run_suite, in execution order.
std::span<const std::string_view> suite_families();

/// Family of a result name ("alt-sums.bell-p" belongs to "alt-sums").
std::string_view family_of(std::string_view check_name);

struct SuiteOptions {
  u64 primes_to = 100;
  u64 n_to = 100;
  std::vector<std::string> families;  // empty runs everything
  unsigned jobs = 1;
};

/// Runs the selected families: n-indexed ones for n = 1..n_to, prime-indexed
/// ones for odd primes <= primes_to. Results are grouped by family in
/// suite_families() order, then ordered by subject and aux.
/// Throws std::invalid_argument on an unknown family name.
std::vector<CheckResult> run_suite(const SuiteOptions& opts);

}  // namespace kurepa
