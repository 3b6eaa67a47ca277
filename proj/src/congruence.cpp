#include "kurepa/congruence.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

#include "kurepa/exact.hpp"
#include "kurepa/kernels.hpp"
#include "kurepa/parallel.hpp"

namespace kurepa {

namespace {

constexpr std::array<std::string_view, 11> kFamilies{
    "lemma21",      "corollary-floor", "floor-identity", "kh-floor-diff",   "alt-sums", "touchard",
    "bell-link",    "wilson-shift",    "diff-lemma",     "corollary-kh-ks", "kh-prime",
};

constexpr std::size_t kFirstPrimeFamily = 4;
constexpr std::size_t kPrimeBatch = 32;  // one Bell kernel pass

u64 sign_times(const Modulus& m, u64 exponent, u64 value) { return (exponent & 1) ? m.neg(value) : value; }

u64 reduce_exact(const ArbInt& v, u64 n) { return mpz_fdiv_ui(v.get_mpz_t(), n); }

// floor(j!/e) mod n: exact below the cutoff, S(j) - delta_j from streamed residues above it.
u64 floor_fact_over_e_mod(const Modulus& m, u64 j) {
  if (j <= kExactFloorMax) return reduce_exact(floor_fact_over_e(j), m.value());
  return m.sub(subfactorial_mod(m, j), parity_delta(j).value);
}

struct FloorResidues {
  u64 prev;  // floor((n-1)!/e) mod n
  u64 cur;   // floor(n!/e) mod n
};

FloorResidues floor_pair(const Modulus& m, u64 n, const std::vector<ArbInt>* exact) {
  if (exact != nullptr && n < exact->size()) {
    return {reduce_exact((*exact)[n - 1], m.value()), reduce_exact((*exact)[n], m.value())};
  }
  return {floor_fact_over_e_mod(m, n - 1), floor_fact_over_e_mod(m, n)};
}

CheckResult corollary_floor_impl(u64 n, const std::vector<ArbInt>* exact) {
  if (n == 1) return make_check("corollary-floor", 1, std::nullopt, 1, 0, 0);
  const Modulus m(n);
  const u64 floor_prev = floor_pair(m, n, exact).prev;
  const u64 rhs = m.add(sign_times(m, n - 1, floor_prev), parity_delta(n - 1).value);
  return make_check("corollary-floor", n, std::nullopt, n, left_factorial_mod(m, n), rhs);
}

CheckResult floor_identity_impl(u64 n, const std::vector<ArbInt>* exact) {
  if (n == 1) return make_check("floor-identity", 1, std::nullopt, 1, 0, 0);
  const Modulus m(n);
  return make_check("floor-identity", n, std::nullopt, n, floor_pair(m, n, exact).cur,
                    m.neg(parity_delta(n - 1).value));
}

CheckResult kh_floor_diff_impl(u64 n, const std::vector<ArbInt>* exact) {
  const Polarity pol = n <= 2 ? Polarity::must_hold : Polarity::must_fail;
  if (n == 1) return make_check("kh-floor-diff", 1, std::nullopt, 1, 0, 0, pol);
  const Modulus m(n);
  const auto f = floor_pair(m, n, exact);
  return make_check("kh-floor-diff", n, std::nullopt, n, m.sub(f.cur, f.prev), 0, pol);
}

std::vector<u64> sample_range(u64 lo, u64 hi, u64 p, std::initializer_list<u64> sample) {
  std::vector<u64> out;
  if (p <= kFullRangePrimeMax) {
    for (u64 v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::set<u64> picked;
  for (u64 v : sample) {
    if (v >= lo && v <= hi) picked.insert(v);
  }
  return {picked.begin(), picked.end()};
}

}  // namespace

std::vector<u64> bell_mod(u64 m, u64 count) {
  if (m >= 2 && m < simd::kLaneModulusMax) {
    const std::uint32_t lane = static_cast<std::uint32_t>(m);
    auto rows = simd::bell_residues(std::span(&lane, 1), static_cast<std::uint32_t>(count));
    return {rows[0].begin(), rows[0].end()};
  }
  const Modulus mod(m);
  std::vector<u64> out;
  out.reserve(count);
  std::vector<u64> prev{1}, cur;
  for (u64 row = 0; row < count; ++row) {
    if (row > 0) {
      cur.resize(row + 1);
      cur[0] = prev[row - 1];
      for (u64 j = 1; j <= row; ++j) cur[j] = mod.add(cur[j - 1], prev[j - 1]);
      prev.swap(cur);
    }
    out.push_back(mod.reduce(prev[0]));
  }
  return out;
}

PrimeTables::PrimeTables(u64 p, u64 bell_count) : PrimeTables(p, bell_mod(p, bell_count)) {}

PrimeTables::PrimeTables(u64 p, std::vector<u64> bell_residues) : mod_(p), bell_(std::move(bell_residues)) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  k_ = left_factorial_residues(mod_, p);
  s_ = subfactorial_residues(mod_, p);
  fact_.reserve(p + 1);
  for (const auto& term : FactorialResidues(mod_, p)) fact_.push_back(term.value);
  inv_fact_.resize(p);
  inv_fact_[p - 1] = mod_inv(fact_[p - 1], mod_);
  for (u64 n = p - 1; n >= 1; --n) inv_fact_[n - 1] = mod_.mul(inv_fact_[n], n);
}

std::vector<CheckResult> check_lemma_alt_sums(const PrimeTables& t) {
  const u64 p = t.prime();
  const auto& m = t.modulus();
  if (t.bell_count() < p + 1) throw std::invalid_argument("alt-sums needs Bell residues through B_p");
  u64 bell_sum = 0, sub_sum = 0;
  for (u64 k = 0; k <= p; ++k) {
    bell_sum = (k & 1) ? m.sub(bell_sum, t.bell(k)) : m.add(bell_sum, t.bell(k));
    sub_sum = (k & 1) ? m.sub(sub_sum, t.subfactorial(k)) : m.add(sub_sum, t.subfactorial(k));
  }
  return {
      make_check("alt-sums.bell", p, std::nullopt, p, bell_sum, 0),
      make_check("alt-sums.subfactorial", p, std::nullopt, p, sub_sum, 0),
      make_check("alt-sums.bell-p", p, std::nullopt, p, t.bell(p), m.reduce(2)),
      make_check("alt-sums.subfactorial-p", p, std::nullopt, p, t.subfactorial(p), p - 1),
  };
}

CheckResult check_touchard(const PrimeTables& t, u64 n) {
  const u64 p = t.prime();
  const auto& m = t.modulus();
  if (t.bell_count() < n + p + 1) throw std::invalid_argument("touchard needs Bell residues through B_{n+p}");
  const u64 lhs = m.sub(m.sub(t.bell(n + p), t.bell(n + 1)), t.bell(n));
  return make_check("touchard", p, n, p, lhs, 0);
}

CheckResult check_bell_kurepa_link(const PrimeTables& t) {
  const u64 p = t.prime();
  const auto& m = t.modulus();
  if (t.bell_count() < p) throw std::invalid_argument("bell-link needs Bell residues through B_{p-1}");
  return make_check("bell-link", p, std::nullopt, p, t.left_factorial(p), m.sub(t.bell(p - 1), 1));
}

CheckResult check_wilson_shift(const PrimeTables& t, u64 k) {
  const u64 p = t.prime();
  if (k < 1 || k > p) throw std::invalid_argument("wilson-shift needs 1 <= k <= p");
  const u64 rhs = sign_times(t.modulus(), k, t.inverse_factorial(k - 1));
  return make_check("wilson-shift", p, k, p, t.factorial(p - k), rhs);
}

CheckResult check_diff_lemma(const PrimeTables& t, u64 l) {
  const u64 p = t.prime();
  const auto& m = t.modulus();
  if (l < 1 || l > p) throw std::invalid_argument("diff-lemma needs 1 <= l <= p");
  const u64 lhs = m.sub(t.left_factorial(p), t.left_factorial(p - l));
  const u64 rhs = m.neg(m.mul(t.subfactorial(l - 1), t.inverse_factorial(l - 1)));
  return make_check("diff-lemma", p, l, p, lhs, rhs);
}

CheckResult check_corollary_kh_ks(const PrimeTables& t, u64 l) {
  const u64 p = t.prime();
  const auto& m = t.modulus();
  if (l >= p) throw std::invalid_argument("corollary-kh-ks needs 0 <= l < p");
  const u64 lhs = m.mul(t.factorial(l), t.left_factorial(p - 1 - l));
  // floor(l!/e) + delta_l is S(l) exactly
  const u64 floor_l = m.sub(t.subfactorial(l), parity_delta(l).value);
  const u64 rhs = m.add(floor_l, parity_delta(l).value);
  return make_check("corollary-kh-ks", p, l, p, lhs, rhs, Polarity::must_fail);
}

CheckResult check_kh_prime(const PrimeTables& t) {
  return make_check("kh-prime", t.prime(), std::nullopt, t.prime(), t.left_factorial(t.prime()), 0,
                    Polarity::must_fail);
}

std::vector<CheckResult> check_lemma_alt_sums(u64 p) { return check_lemma_alt_sums(PrimeTables(p, p + 1)); }
CheckResult check_touchard(u64 p, u64 n) { return check_touchard(PrimeTables(p, n + p + 1), n); }
CheckResult check_bell_kurepa_link(u64 p) { return check_bell_kurepa_link(PrimeTables(p, p)); }
CheckResult check_wilson_shift(u64 p, u64 k) { return check_wilson_shift(PrimeTables(p, 0), k); }
CheckResult check_diff_lemma(u64 p, u64 l) { return check_diff_lemma(PrimeTables(p, 0), l); }
CheckResult check_corollary_kh_ks(u64 p, u64 l) { return check_corollary_kh_ks(PrimeTables(p, 0), l); }

CheckResult check_lemma_2_1(u64 n) {
  if (n == 0) throw std::invalid_argument("lemma21 needs n >= 1");
  if (n == 1) return make_check("lemma21", 1, std::nullopt, 1, 0, 0);
  const Modulus m(n);
  const u64 rhs = sign_times(m, n - 1, subfactorial_mod(m, n - 1));
  return make_check("lemma21", n, std::nullopt, n, left_factorial_mod(m, n), rhs);
}

CheckResult check_corollary_floor(u64 n) {
  if (n == 0) throw std::invalid_argument("corollary-floor needs n >= 1");
  return corollary_floor_impl(n, nullptr);
}

CheckResult check_floor_identity(u64 n) {
  if (n == 0) throw std::invalid_argument("floor-identity needs n >= 1");
  return floor_identity_impl(n, nullptr);
}

CheckResult check_kh_floor_diff(u64 n) {
  if (n == 0) throw std::invalid_argument("kh-floor-diff needs n >= 1");
  return kh_floor_diff_impl(n, nullptr);
}

std::span<const std::string_view> suite_families() { return kFamilies; }

std::string_view family_of(std::string_view check_name) {
  return check_name.substr(0, check_name.find('.'));
}

std::vector<CheckResult> run_suite(const SuiteOptions& opts) {
  std::array<bool, kFamilies.size()> on{};
  if (opts.families.empty()) {
    on.fill(true);
  } else {
    for (const auto& f : opts.families) {
      auto it = std::find(kFamilies.begin(), kFamilies.end(), f);
      if (it == kFamilies.end()) throw std::invalid_argument("unknown check family: " + f);
      on[static_cast<std::size_t>(it - kFamilies.begin())] = true;
    }
  }
  auto enabled = [&](std::string_view f) {
    return on[static_cast<std::size_t>(std::find(kFamilies.begin(), kFamilies.end(), f) - kFamilies.begin())];
  };
  using Grouped = std::array<std::vector<CheckResult>, kFamilies.size()>;
  Grouped grouped;
  auto family_index = [](std::string_view name) {
    return static_cast<std::size_t>(std::find(kFamilies.begin(), kFamilies.end(), family_of(name)) -
                                    kFamilies.begin());
  };

  // n-indexed families
  const bool floor_needed = enabled("corollary-floor") || enabled("floor-identity") || enabled("kh-floor-diff");
  std::vector<ArbInt> exact_floor;
  if (floor_needed && opts.n_to >= 1) exact_floor = floor_fact_over_e_prefix(std::min(opts.n_to, kExactFloorMax));
  const std::vector<ArbInt>* exact = exact_floor.empty() ? nullptr : &exact_floor;

  auto per_n = ordered_map(opts.n_to, opts.jobs, [&](std::size_t i) {
    const u64 n = i + 1;
    std::vector<CheckResult> out;
    if (enabled("lemma21")) out.push_back(check_lemma_2_1(n));
    if (enabled("corollary-floor")) out.push_back(corollary_floor_impl(n, exact));
    if (enabled("floor-identity")) out.push_back(floor_identity_impl(n, exact));
    if (enabled("kh-floor-diff")) out.push_back(kh_floor_diff_impl(n, exact));
    return out;
  });
  for (auto& batch : per_n) {
    for (auto& r : batch) grouped[family_index(r.name)].push_back(std::move(r));
  }

  // prime-indexed families, in lane-sized batches of odd primes
  bool any_prime_family = false;
  for (std::size_t f = kFirstPrimeFamily; f < kFamilies.size(); ++f) any_prime_family |= on[f];
  if (any_prime_family && opts.primes_to >= 3) {
    auto primes = sieve_primes(opts.primes_to);
    primes.erase(primes.begin());
    const std::size_t batches = (primes.size() + kPrimeBatch - 1) / kPrimeBatch;

    auto touchard_ns = [&](u64 p) {
      return sample_range(0, opts.n_to, p, {0, 1, 2, 3});
    };
    auto bell_needed = [&](u64 p) -> u64 {
      u64 need = 0;
      if (enabled("bell-link")) need = std::max(need, p);
      if (enabled("alt-sums")) need = std::max(need, p + 1);
      if (enabled("touchard")) {
        auto ns = touchard_ns(p);
        if (!ns.empty()) need = std::max(need, p + ns.back() + 1);
      }
      return need;
    };

    auto per_batch = ordered_map(batches, opts.jobs, [&](std::size_t b) {
      const std::size_t lo = b * kPrimeBatch;
      const std::size_t hi = std::min(primes.size(), lo + kPrimeBatch);
      u64 bell_count = 0;
      for (std::size_t i = lo; i < hi; ++i) bell_count = std::max(bell_count, bell_needed(primes[i]));

      std::vector<std::vector<u64>> bells(hi - lo);
      if (bell_count > 0) {
        if (primes[hi - 1] < simd::kLaneModulusMax) {
          std::vector<std::uint32_t> lanes(primes.begin() + lo, primes.begin() + hi);
          auto rows = simd::bell_residues(lanes, static_cast<std::uint32_t>(bell_count));
          for (std::size_t i = 0; i < rows.size(); ++i) bells[i].assign(rows[i].begin(), rows[i].end());
        } else {
          for (std::size_t i = lo; i < hi; ++i) bells[i - lo] = bell_mod(primes[i], bell_count);
        }
      }

      Grouped out;
      for (std::size_t i = lo; i < hi; ++i) {
        const u64 p = primes[i];
        const PrimeTables t(p, std::move(bells[i - lo]));
        auto add = [&](CheckResult r) { out[family_index(r.name)].push_back(std::move(r)); };
        if (enabled("alt-sums")) {
          for (auto& r : check_lemma_alt_sums(t)) add(std::move(r));
        }
        if (enabled("touchard")) {
          for (u64 n : touchard_ns(p)) add(check_touchard(t, n));
        }
        if (enabled("bell-link")) add(check_bell_kurepa_link(t));
        if (enabled("wilson-shift")) {
          for (u64 k : sample_range(1, p, p, {1, 2, 3, p - 1, p})) add(check_wilson_shift(t, k));
        }
        if (enabled("diff-lemma")) {
          for (u64 l : sample_range(1, p, p, {1, 2, 3, p - 1, p})) add(check_diff_lemma(t, l));
        }
        if (enabled("corollary-kh-ks")) {
          for (u64 l : sample_range(0, p - 1, p, {0, 1, 2, 3, 4})) add(check_corollary_kh_ks(t, l));
        }
        if (enabled("kh-prime")) add(check_kh_prime(t));
      }
      return out;
    });
    for (auto& batch : per_batch) {
      for (std::size_t f = 0; f < kFamilies.size(); ++f) {
        for (auto& r : batch[f]) grouped[f].push_back(std::move(r));
      }
    }
  }

  std::vector<CheckResult> results;
  for (auto& g : grouped) {
    for (auto& r : g) results.push_back(std::move(r));
  }
  return results;
}

}  // namespace kurepa
