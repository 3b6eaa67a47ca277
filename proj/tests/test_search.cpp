#include <random>

#include "doctest.h"
#include "kurepa/errors.hpp"
#include "kurepa/exact.hpp"
#include "kurepa/search.hpp"
#include "oracles.hpp"

using namespace kurepa;

namespace {

std::vector<u64> pair_ns(const PrimeIndexRecord& r) {
  std::vector<u64> ns;
  for (const auto& pair : r.pairs) ns.push_back(pair.n);
  return ns;
}

const ScanResult& scan_10000() {
  static const ScanResult result = scan_range(10000);
  return result;
}

}  // namespace

TEST_SUITE("search") {
  TEST_CASE("find_pairs examples") {
    const auto r19 = find_pairs(19);
    CHECK(pair_ns(r19) == std::vector<u64>{7, 12, 16});
    for (const auto& pair : r19.pairs) CHECK(pair.order == 1);
    CHECK(r19.index() == 3);
    CHECK(find_pairs(3).index() == 0);
    const auto r5 = find_pairs(5);
    REQUIRE(r5.index() == 1);
    CHECK(r5.pairs[0] == KurepaPair{5, 4, 1});
  }

  TEST_CASE("find_pairs rejects bad primes") {
    CHECK_THROWS_AS(find_pairs(2), std::invalid_argument);
    CHECK_THROWS_AS(find_pairs(9), std::invalid_argument);
    CHECK_THROWS_AS(find_pairs(1), std::invalid_argument);
  }

  TEST_CASE("find_pairs against exact valuations for p < 300") {
    const auto k = left_factorial_prefix(300);
    for (u64 p : sieve_primes(300)) {
      if (p == 2) continue;
      PrimeIndexRecord expect{p, {}};
      for (u64 n = 1; n < p; ++n) {
        unsigned order = 0;
        mpz_class v = k[n];
        while (v != 0 && mpz_divisible_ui_p(v.get_mpz_t(), p)) {
          v /= p;
          ++order;
        }
        if (order > 0) expect.pairs.push_back({p, n, order});
      }
      REQUIRE(find_pairs(p) == expect);
    }
  }

  TEST_CASE("find_pairs agrees with the mod p^2 profile") {
    auto primes = sieve_primes(3000);
    primes.erase(primes.begin());
    for (u64 p : primes) REQUIRE(find_pairs(p) == find_pairs_via_profile(p));
    for (u64 p : {32749ull, 32771ull, 54503ull}) CHECK(find_pairs(p) == find_pairs_via_profile(p));
  }

  TEST_CASE("ResidueProfile difference invariant, 100 random (p, r)") {
    const auto primes = sieve_primes(10000);
    std::mt19937 rng(3);
    std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
    std::uniform_int_distribution<unsigned> power(1, 3);
    for (int trial = 0; trial < 100; ++trial) {
      const u64 p = primes[pick(rng)];
      const unsigned r = power(rng);
      const ResidueProfile prof(p, r);
      const auto& v = prof.values();
      REQUIRE(v.size() == p + 1);
      REQUIRE(v[0] == 0);
      const Modulus& m = prof.modulus();
      REQUIRE(m.value() == checked_pow(p, r));
      u64 f = 1 % m.value();
      for (u64 n = 0; n < p; ++n) {
        REQUIRE(m.sub(v[n + 1], v[n]) == f);
        f = m.mul(f, (n + 1) % m.value());
      }
    }
  }

  TEST_CASE("pair_orders and the power cap") {
    CHECK(pair_orders(19, std::vector<u64>{7, 12, 16}) == std::vector<unsigned>{1, 1, 1});
    CHECK(pair_orders(54503, std::vector<u64>{26541, 49783}) == std::vector<unsigned>{2, 1});
    // with a cap of 1 the order is reported as the cap
    CHECK(pair_orders(54503, std::vector<u64>{26541}, 1) == std::vector<unsigned>{1});
    CHECK(max_power_in_bounds(2) == 63);
    CHECK(max_power_in_bounds(3) == 39);
  }

  TEST_CASE("pair constraints: range, congruence, unit") {
    for (const auto& pair : find_pairs(19).pairs) {
      const auto checks = check_theorem_3_2(pair);
      REQUIRE(checks.size() == 3);
      for (const auto& c : checks) CHECK(c.passed);
    }
    const auto c12 = check_theorem_3_2({19, 12, 1});
    CHECK(c12[2].lhs == 265 % 19);
    const auto c5 = check_theorem_3_2({5, 4, 1});
    CHECK(c5[0].passed);
    CHECK(c5[0].lhs == 1);
    // a fabricated n outside the range is flagged
    CHECK_FALSE(check_theorem_3_2({19, 3, 1})[0].passed);
  }

  TEST_CASE("gap property and index bound") {
    const auto g19 = check_gap_property(find_pairs(19));
    CHECK(g19.passed);
    CHECK(g19.lhs == 4);
    CHECK(check_gap_property(find_pairs(3)).passed);
    const auto g2203 = check_gap_property(find_pairs(2203));
    CHECK(g2203.lhs == 49);
    CHECK(g2203.passed);
    const PrimeIndexRecord bad{19, {{19, 7, 1}, {19, 9, 1}}};
    CHECK_FALSE(check_gap_property(bad).passed);
    const auto b = check_index_bound(find_pairs(19));
    CHECK(b.lhs == 3);
    CHECK(b.rhs == 4);
    CHECK(b.passed);
  }

  TEST_CASE("scan to 61 reproduces the index table") {
    const auto s = scan_range(61);
    std::vector<std::size_t> idx;
    for (const auto& r : s.records) idx.push_back(r.index());
    CHECK(idx == std::vector<std::size_t>{0, 1, 1, 1, 0, 1, 3, 1, 0, 2, 1, 2, 0, 0, 0, 0, 1});
    CHECK(s.complete);
    CHECK(s.report.total == 17);
  }

  TEST_CASE("scan to 10000 distribution and index-5 primes") {
    const auto& s = scan_10000();
    CHECK(s.report.total == 1228);
    const std::map<unsigned, u64> hist{{0, 459}, {1, 472}, {2, 213}, {3, 58}, {4, 23}, {5, 3}};
    CHECK(s.report.histogram == hist);
    CHECK(s.report.max_index() == 5);
    const std::vector<std::string> ratios{"0.37378", "0.38436", "0.17345", "0.04723", "0.01873", "0.00244"};
    for (unsigned r = 0; r <= 5; ++r) CHECK(s.report.ratio(r).decimal(5) == ratios[r]);

    std::map<u64, std::vector<u64>> five;
    for (const auto& rec : s.records) {
      if (rec.index() == 5) five[rec.p] = pair_ns(rec);
    }
    const std::map<u64, std::vector<u64>> expect{{2203, {277, 788, 837, 1246, 1927}},
                                                 {5227, {850, 1752, 3451, 4363, 4716}},
                                                 {6689, {1716, 2404, 3641, 3969, 6601}}};
    CHECK(five == expect);
  }

  TEST_CASE("every record below 10000 satisfies the structural bounds") {
    for (const auto& rec : scan_10000().records) {
      REQUIRE(check_index_bound(rec).passed);
      REQUIRE(check_gap_property(rec).passed);
      for (const auto& pair : rec.pairs) {
        for (const auto& c : check_theorem_3_2(pair)) REQUIRE(c.passed);
      }
    }
  }

  TEST_CASE("simple power audit") {
    const auto& s = scan_10000();
    const auto audit = simple_power_audit(s.records, 10000);
    CHECK(audit.result.passed);
    CHECK(audit.higher_order.empty());
    CHECK(audit.k3_exception);
    std::size_t pairs = 0;
    for (const auto& r : s.records) pairs += r.index();
    CHECK(audit.pairs_checked == pairs);
    const auto small = scan_range(100);
    CHECK(simple_power_audit(small.records, 100).result.passed);
    const std::vector<PrimeIndexRecord> fake{{19, {{19, 7, 2}}}};
    CHECK_FALSE(simple_power_audit(fake, 100).result.passed);
  }

  TEST_CASE("scan prefix property and job independence") {
    const auto& big = scan_10000().records;
    for (u64 limit : {3ull, 4ull, 100ull, 1000ull, 5003ull}) {
      const auto small = scan_range(limit).records;
      REQUIRE(small.size() <= big.size());
      REQUIRE(std::equal(small.begin(), small.end(), big.begin()));
    }
    ScanOptions opts;
    opts.jobs = 8;
    opts.chunk_primes = 7;
    CHECK(scan_range(10000, opts).records == big);
  }

  TEST_CASE("scan stop and resume") {
    ScanOptions opts;
    opts.chunk_primes = 10;
    opts.stop_after = 25;
    std::size_t progress_calls = 0;
    opts.on_progress = [&](std::span<const PrimeIndexRecord>) { ++progress_calls; };
    const auto part = scan_range(1000, opts);
    CHECK_FALSE(part.complete);
    CHECK(part.records.size() == 25);
    CHECK(progress_calls > 0);

    ScanOptions again;
    again.resume = part.records;
    const auto full = scan_range(1000, again);
    CHECK(full.complete);
    CHECK(full.records == scan_range(1000).records);

    ScanOptions broken;
    broken.resume = {{5, {}}};
    CHECK_THROWS_AS(scan_range(1000, broken), std::invalid_argument);
    CHECK_THROWS_AS(scan_range(2), std::invalid_argument);
  }

  TEST_CASE("mod 4 behaviour") {
    const auto r = check_mod4_behavior(10);
    CHECK(r.passed);
    CHECK(r.rhs == 409114 % 4);
    CHECK(oracle::left_factorial(3) % 4 == 0);
    CHECK(check_mod4_behavior(4).passed);
    CHECK(check_mod4_behavior(100000).passed);
    CHECK_THROWS_AS(check_mod4_behavior(3), std::invalid_argument);
  }

  TEST_CASE("order two search") {
    CHECK(order_two_search(19, 19).empty());
    CHECK(order_two_search(2, 100) == std::vector<OrderHit>{{3, 2}});
    const auto hits = order_two_search(54503, 50000);
    CHECK(hits == std::vector<OrderHit>{{26541, 2}});
    // p^2 | K(n) checked exactly for small p
    const auto k = left_factorial_prefix(200);
    for (u64 p : {3ull, 5ull, 7ull, 11ull}) {
      std::vector<OrderHit> expect;
      for (u64 n = 1; n <= 200; ++n) {
        unsigned order = 0;
        mpz_class v = k[n];
        while (v != 0 && mpz_divisible_ui_p(v.get_mpz_t(), p)) {
          v /= p;
          ++order;
        }
        if (order >= 2) expect.push_back({n, order});
      }
      CHECK(order_two_search(p, 200) == expect);
    }
  }

  TEST_CASE("Fraction rendering") {
    CHECK(Fraction::reduced(459, 1228).str() == "459/1228");
    CHECK(Fraction::reduced(2, 4) == Fraction{1, 2});
    CHECK(Fraction{1, 8}.decimal(2) == "0.13");
    CHECK(Fraction{1, 1}.decimal(5) == "1.00000");
    CHECK(Fraction{0, 3}.decimal(3) == "0.000");
  }
}
