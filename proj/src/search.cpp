#include "kurepa/search.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "kurepa/kernels.hpp"
#include "kurepa/parallel.hpp"

namespace kurepa {

namespace {

void require_odd_prime(u64 p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not an odd prime");
}

// n in [1, p-1] with p | K(n); throws KHViolation if p | K(p).
std::vector<u64> zero_positions(u64 p) {
  if (p < simd::kLaneModulusMax) {
    const auto lane = static_cast<std::uint32_t>(p);
    auto scan = simd::left_factorial_zero_scan(std::span(&lane, 1));
    if (scan[0].k_at_modulus == 0) throw KHViolation(p);
    return {scan[0].zeros.begin(), scan[0].zeros.end()};
  }
  const Modulus m(p);
  std::vector<u64> zeros;
  u64 sum = 0, fact = 1;
  for (u64 n = 1; n <= p; ++n) {
    sum = m.add(sum, fact);
    if (n < p && sum == 0) zeros.push_back(n);
    fact = m.mul(fact, n);
  }
  if (sum == 0) throw KHViolation(p);
  return zeros;
}

PrimeIndexRecord record_from_zeros(u64 p, const std::vector<u64>& zeros, unsigned max_power) {
  PrimeIndexRecord rec{p, {}};
  const auto orders = pair_orders(p, zeros, max_power);
  for (std::size_t i = 0; i < zeros.size(); ++i) rec.pairs.push_back({p, zeros[i], orders[i]});
  return rec;
}

std::vector<PrimeIndexRecord> scan_chunk(std::span<const u64> primes) {
  std::vector<PrimeIndexRecord> out;
  out.reserve(primes.size());
  std::vector<std::uint32_t> lanes;
  for (u64 p : primes) {
    if (p < simd::kLaneModulusMax) lanes.push_back(static_cast<std::uint32_t>(p));
  }
  const auto scans = simd::left_factorial_zero_scan(lanes);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const u64 p = primes[i];
    if (i < scans.size()) {
      if (scans[i].k_at_modulus == 0) throw KHViolation(p);
      out.push_back(record_from_zeros(p, {scans[i].zeros.begin(), scans[i].zeros.end()}, 0));
    } else {
      out.push_back(record_from_zeros(p, zero_positions(p), 0));
    }
  }
  return out;
}

}  // namespace

Fraction Fraction::reduced(u64 num, u64 den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  const u64 g = std::gcd(num, den);
  return g == 0 ? Fraction{0, 1} : Fraction{num / g, den / g};
}

std::string Fraction::decimal(unsigned digits) const {
  u128 scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  const u128 scaled = static_cast<u128>(num) * scale;
  u128 q = scaled / den;
  if (2 * (scaled % den) >= den) ++q;
  const auto whole = static_cast<u64>(q / scale);
  std::string frac = std::to_string(static_cast<u64>(q % scale));
  if (digits == 0) return std::to_string(whole);
  frac.insert(0, digits - frac.size(), '0');
  return std::to_string(whole) + "." + frac;
}

Fraction DistributionReport::ratio(unsigned r) const {
  auto it = histogram.find(r);
  return Fraction::reduced(it == histogram.end() ? 0 : it->second, total == 0 ? 1 : total);
}

unsigned DistributionReport::max_index() const { return histogram.empty() ? 0 : histogram.rbegin()->first; }

DistributionReport make_distribution(u64 limit, std::span<const PrimeIndexRecord> records) {
  DistributionReport rep;
  rep.limit = limit;
  rep.total = records.size();
  unsigned top = 0;
  for (const auto& r : records) top = std::max(top, static_cast<unsigned>(r.index()));
  if (!records.empty()) {
    for (unsigned r = 0; r <= top; ++r) rep.histogram[r] = 0;
  }
  for (const auto& r : records) ++rep.histogram[static_cast<unsigned>(r.index())];
  return rep;
}

ResidueProfile::ResidueProfile(u64 p, unsigned r) : p_(p), r_(r), mod_(checked_pow(p, r)) {
  if (r < 1) throw std::invalid_argument("profile power must be >= 1");
  values_ = left_factorial_residues(mod_, p);
}

unsigned max_power_in_bounds(u64 p) {
  if (p < 2) throw std::invalid_argument("max_power_in_bounds needs p >= 2");
  unsigned r = 0;
  while (pow_fits(p, r + 1)) ++r;
  return r;
}

std::vector<unsigned> pair_orders(u64 p, std::span<const u64> ns, unsigned max_power) {
  const bool automatic = max_power == 0;
  const unsigned cap = automatic ? max_power_in_bounds(p) : max_power;
  if (!automatic) checked_pow(p, cap);
  std::vector<unsigned> orders(ns.size(), 1);
  std::vector<std::size_t> pending(ns.size());
  std::iota(pending.begin(), pending.end(), std::size_t{0});
  std::sort(pending.begin(), pending.end(), [&](auto a, auto b) { return ns[a] < ns[b]; });

  for (unsigned r = 2; r <= cap && !pending.empty(); ++r) {
    const Modulus m(checked_pow(p, r));
    std::vector<std::size_t> still;
    u64 sum = 0, fact = 1, n = 0;
    for (std::size_t idx : pending) {
      for (; n < ns[idx]; ++n) {
        sum = m.add(sum, fact);
        fact = m.mul(fact, n + 1);
      }
      if (sum == 0) {
        orders[idx] = r;
        still.push_back(idx);
      }
    }
    pending.swap(still);
  }
  if (automatic && !pending.empty()) {
    throw ModulusOverflow("order of (" + std::to_string(p) + ", " + std::to_string(ns[pending[0]]) +
                          ") exceeds the largest representable power");
  }
  return orders;
}

PrimeIndexRecord find_pairs(u64 p, unsigned max_power) {
  require_odd_prime(p);
  return record_from_zeros(p, zero_positions(p), max_power);
}

PrimeIndexRecord find_pairs_via_profile(u64 p) {
  require_odd_prime(p);
  const ResidueProfile profile(p, 2);
  const auto& v = profile.values();
  if (v[p] % p == 0) throw KHViolation(p);
  PrimeIndexRecord rec{p, {}};
  std::vector<u64> deeper;
  for (u64 n = 1; n < p; ++n) {
    if (v[n] % p != 0) continue;
    rec.pairs.push_back({p, n, v[n] == 0 ? 2u : 1u});
    if (v[n] == 0) deeper.push_back(n);
  }
  if (!deeper.empty()) {
    const auto orders = pair_orders(p, deeper);
    std::size_t j = 0;
    for (auto& pair : rec.pairs) {
      if (j < deeper.size() && pair.n == deeper[j]) pair.order = orders[j++];
    }
  }
  return rec;
}

std::vector<CheckResult> check_theorem_3_2(const KurepaPair& pair) {
  const u64 p = pair.p, n = pair.n;
  const bool in_range = p > n && n > 3;
  const u64 margin = in_range ? std::min(n - 3, p - n) : 0;
  std::vector<CheckResult> out;
  out.push_back(make_check("thm32.range", p, n, 0, margin, 1, Polarity::must_hold, Relation::at_least));
  if (!in_range || !is_prime(p)) {
    out.push_back(make_check("thm32.congruence", p, n, 0, 0, 1, Polarity::must_hold, Relation::at_least));
    out.push_back(make_check("thm32.unit", p, n, 0, 0, 1, Polarity::must_hold, Relation::at_least));
    return out;
  }
  const Modulus m(p);
  const u64 s = subfactorial_mod(m, p - 1 - n);
  u64 rhs = m.mul(factorial_mod(m, n), s);
  if (n & 1) rhs = m.neg(rhs);
  out.push_back(make_check("thm32.congruence", p, n, p, left_factorial_mod(m, p), rhs));
  out.push_back(make_check("thm32.unit", p, n, p, s, 0, Polarity::must_fail));
  return out;
}

CheckResult check_gap_property(const PrimeIndexRecord& record) {
  u64 min_gap = 4;
  for (std::size_t i = 1; i < record.pairs.size(); ++i) {
    const u64 gap = record.pairs[i].n - record.pairs[i - 1].n;
    min_gap = i == 1 ? gap : std::min(min_gap, gap);
  }
  return make_check("gap", record.p, std::nullopt, 0, min_gap, 4, Polarity::must_hold, Relation::at_least);
}

CheckResult check_index_bound(const PrimeIndexRecord& record) {
  return make_check("index-bound", record.p, std::nullopt, 0, record.index(), (record.p - 1) / 4,
                    Polarity::must_hold, Relation::at_most);
}

CheckResult check_mod4_behavior(u64 n_max) {
  if (n_max < 4) throw std::invalid_argument("mod4 check needs n_max >= 4");
  const Modulus m(4);
  u64 sum = 0, fact = 1;
  for (u64 n = 1; n <= n_max; ++n) {
    sum = m.add(sum, fact);  // K(n) mod 4
    fact = m.mul(fact, n);
    if (n >= 2 && n < 4 && sum % 2 != 0) return make_check("mod4.even", n, std::nullopt, 2, sum % 2, 0);
    if (n >= 4 && sum != 2) return make_check("mod4", n, std::nullopt, 4, sum, 2);
  }
  return make_check("mod4", n_max, std::nullopt, 4, sum, 2);
}

std::vector<OrderHit> order_two_search(u64 p, u64 n_max) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  const u64 p2 = checked_pow(p, 2);
  const Modulus m(checked_pow(p, 3));
  std::vector<OrderHit> hits;
  u64 sum = 0, fact = 1;
  for (u64 n = 1; n <= n_max; ++n) {
    sum = m.add(sum, fact);
    fact = m.mul(fact, n);
    if (sum % p2 != 0) continue;
    if (sum != 0) {
      hits.push_back({n, 2});
    } else {
      const u64 one[] = {n};
      hits.push_back({n, pair_orders(p, one)[0]});
    }
  }
  return hits;
}

SimplePowerAudit simple_power_audit(std::span<const PrimeIndexRecord> records, u64 limit) {
  SimplePowerAudit audit;
  for (const auto& rec : records) {
    if (rec.p >= limit) continue;
    for (const auto& pair : rec.pairs) {
      ++audit.pairs_checked;
      if (pair.order >= 2) audit.higher_order.push_back(pair);
    }
  }
  const u64 k3 = left_factorial_mod(Modulus(8), 3);
  audit.k3_exception = k3 % 4 == 0 && k3 != 0;
  audit.result = make_check("simple-power", limit, std::nullopt, 0, audit.higher_order.size(), 0,
                            Polarity::must_hold, Relation::at_most);
  return audit;
}

ScanResult scan_range(u64 limit, const ScanOptions& opts) {
  if (limit < 3) throw std::invalid_argument("scan limit must be >= 3");
  auto primes = sieve_primes(limit);
  primes.erase(primes.begin());

  ScanResult result;
  result.records = opts.resume;
  if (result.records.size() > primes.size()) throw std::invalid_argument("resume data extends past the limit");
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    if (result.records[i].p != primes[i]) {
      throw std::invalid_argument("resume data is not a prefix of the odd primes (at p = " +
                                  std::to_string(result.records[i].p) + ")");
    }
  }

  const std::size_t chunk = std::max<std::size_t>(1, opts.chunk_primes);
  const std::size_t wave = std::max(1u, opts.jobs);
  auto stop_reached = [&] { return opts.stop_after && result.records.size() >= *opts.stop_after; };

  std::size_t next = result.records.size();
  while (next < primes.size() && !stop_reached()) {
    const std::size_t remaining_chunks = (primes.size() - next + chunk - 1) / chunk;
    const std::size_t count = std::min(wave, remaining_chunks);
    const std::size_t base = next;
    auto merged = ordered_map(count, opts.jobs, [&](std::size_t c) {
      const std::size_t lo = base + c * chunk;
      const std::size_t hi = std::min(primes.size(), lo + chunk);
      return scan_chunk(std::span(primes).subspan(lo, hi - lo));
    });
    for (auto& part : merged) {
      for (auto& rec : part) result.records.push_back(std::move(rec));
      if (stop_reached()) {
        result.records.resize(*opts.stop_after);
        if (opts.on_progress) opts.on_progress(result.records);
        break;
      }
      if (opts.on_progress) opts.on_progress(result.records);
    }
    next = result.records.size();
  }

  result.complete = result.records.size() == primes.size();
  result.report = make_distribution(limit, result.records);
  return result;
}

}  // namespace kurepa
