#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kurepa/check.hpp"
#include "kurepa/modular.hpp"

namespace kurepa {

/// p^order exactly divides K(n).
struct KurepaPair {
  u64 p = 0;
  u64 n = 0;
  unsigned order = 0;

  friend bool operator==(const KurepaPair&, const KurepaPair&) = default;
};

/// All Kurepa pairs of one odd prime, ascending by n.
struct PrimeIndexRecord {
  u64 p = 0;
  std::vector<KurepaPair> pairs;

  std::size_t index() const noexcept { return pairs.size(); }

  friend bool operator==(const PrimeIndexRecord&, const PrimeIndexRecord&) = default;
};

/// Nonnegative fraction in lowest terms.
struct Fraction {
  u64 num = 0;
  u64 den = 1;

  static Fraction reduced(u64 num, u64 den);
  /// Decimal rendering rounded half-up at `digits` places, e.g. "0.37378".
  std::string decimal(unsigned digits) const;
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct DistributionReport {
  u64 limit = 0;
  u64 total = 0;                       // N, the number of odd primes scanned
  std::map<unsigned, u64> histogram;   // r -> N_r, every r from 0 to the max index

  Fraction ratio(unsigned r) const;
  unsigned max_index() const;

  friend bool operator==(const DistributionReport&, const DistributionReport&) = default;
};

DistributionReport make_distribution(u64 limit, std::span<const PrimeIndexRecord> records);

/// K(n) mod p^r for n = 0..p.
class ResidueProfile {
 public:
  ResidueProfile(u64 p, unsigned r);

  u64 prime() const noexcept { return p_; }
  unsigned power() const noexcept { return r_; }
  const Modulus& modulus() const noexcept { return mod_; }
  const std::vector<u64>& values() const noexcept { return values_; }

 private:
  u64 p_;
  unsigned r_;
  Modulus mod_;
  std::vector<u64> values_;
};

/// Largest r with p^r <= 2^63.
unsigned max_power_in_bounds(u64 p);

/// Exact orders of K(n) at p for the given n, by re-streaming K mod p^2, p^3, ...
/// Each n must already satisfy p | K(n). Orders stop at max_power (0 means the
/// largest power in bounds); reaching the automatic cap throws ModulusOverflow.
std::vector<unsigned> pair_orders(u64 p, std::span<const u64> ns, unsigned max_power = 0);

/// Scans n in [1, p-1] for p | K(n) and refines each hit's order. Throws
/// KHViolation if p | K(p); std::invalid_argument if p is not an odd prime.
PrimeIndexRecord find_pairs(u64 p, unsigned max_power = 0);

/// Same record computed from a ResidueProfile mod p^2 rather than the mod-p scan.
PrimeIndexRecord find_pairs_via_profile(u64 p);

/// (a) p > n > 3, (b) K(p) = (-1)^n n! S(p-1-n) (mod p), (c) p does not divide S(p-1-n).
std::vector<CheckResult> check_theorem_3_2(const KurepaPair& pair);

/// Consecutive pair n-values differ by at least 4.
CheckResult check_gap_property(const PrimeIndexRecord& record);

/// index <= floor((p-1)/4).
CheckResult check_index_bound(const PrimeIndexRecord& record);

/// 2 | K(n) for 2 <= n <= n_max and K(n) = 2 (mod 4) for 4 <= n <= n_max. One
/// aggregated result; lhs/rhs hold the first offending n and residue, or n_max
/// and K(n_max) mod 4 when everything holds.
CheckResult check_mod4_behavior(u64 n_max);

struct OrderHit {
  u64 n = 0;
  unsigned order = 0;

  friend bool operator==(const OrderHit&, const OrderHit&) = default;
};

/// All n in [1, n_max] with p^2 | K(n), with exact orders. Requires p^3 in bounds.
std::vector<OrderHit> order_two_search(u64 p, u64 n_max);

struct SimplePowerAudit {
  CheckResult result;
  u64 pairs_checked = 0;
  std::vector<KurepaPair> higher_order;  // pairs of order >= 2 (expected empty)
  bool k3_exception = false;             // K(3) = 4 = 2^2, the even-prime exception
};

SimplePowerAudit simple_power_audit(std::span<const PrimeIndexRecord> records, u64 limit);

struct ScanOptions {
  unsigned jobs = 1;
  std::size_t chunk_primes = 64;                 // checkpoint granularity in primes
  std::vector<PrimeIndexRecord> resume;          // previously completed prefix
  std::optional<std::size_t> stop_after;         // stop once this many records exist
  std::function<void(std::span<const PrimeIndexRecord>)> on_progress;  // called after each merged chunk
};

struct ScanResult {
  std::vector<PrimeIndexRecord> records;
  DistributionReport report;
  bool complete = false;
};

/// Records for every odd prime <= limit in ascending order. Throws KHViolation
/// for the first offending prime, std::invalid_argument for a resume list that
/// is not a prefix of the odd primes up to limit.
ScanResult scan_range(u64 limit, const ScanOptions& opts = {});

}  // namespace kurepa
