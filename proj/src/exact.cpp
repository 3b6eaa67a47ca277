#include "kurepa/exact.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "kurepa/errors.hpp"

namespace kurepa {

ArbInt factorial(std::uint64_t n) {
  ArbInt f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

std::vector<ArbInt> left_factorial_prefix(std::uint64_t n_max) {
  std::vector<ArbInt> out;
  out.reserve(n_max + 1);
  ArbInt sum = 0, fact = 1;
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    out.push_back(sum);
    sum += fact;
    fact *= n + 1;
  }
  return out;
}

ArbInt left_factorial(std::uint64_t n) { return left_factorial_prefix(n).back(); }

std::vector<ArbInt> subfactorial_prefix(std::uint64_t n_max) {
  std::vector<ArbInt> out;
  out.reserve(n_max + 1);
  ArbInt s = 1;
  out.push_back(s);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    s *= n;
    if (n & 1)
      s -= 1;
    else
      s += 1;
    out.push_back(s);
  }
  return out;
}

ArbInt subfactorial(std::uint64_t n) { return subfactorial_prefix(n).back(); }

std::vector<ArbInt> subfactorial_alt_prefix(std::uint64_t n_max) {
  std::vector<ArbInt> out;
  out.reserve(n_max + 1);
  out.emplace_back(1);
  if (n_max >= 1) out.emplace_back(0);
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    ArbInt next = out[n - 1] + out[n - 2];
    next *= n - 1;
    out.push_back(std::move(next));
  }
  return out;
}

ArbInt subfactorial_alt(std::uint64_t n) { return subfactorial_alt_prefix(n).back(); }

std::vector<ArbInt> bell_prefix(std::uint64_t n_max) {
  std::vector<ArbInt> out;
  out.reserve(n_max + 1);
  out.emplace_back(1);
  std::vector<ArbInt> binom{ArbInt(1)};  // row n of Pascal's triangle
  for (std::uint64_t n = 0; n < n_max; ++n) {
    ArbInt next = 0;
    for (std::uint64_t k = 0; k <= n; ++k) next += binom[k] * out[k];
    out.push_back(std::move(next));
    binom.emplace_back(1);
    for (std::uint64_t k = n; k >= 1; --k) binom[k] += binom[k - 1];
  }
  return out;
}

ArbInt bell(std::uint64_t n) { return bell_prefix(n).back(); }

std::vector<ArbInt> floor_fact_over_e_prefix(std::uint64_t n_max) {
  auto out = subfactorial_prefix(n_max);
  for (std::uint64_t n = 0; n <= n_max; ++n) out[n] -= parity_delta(n).value;
  return out;
}

ArbInt floor_fact_over_e(std::uint64_t n) { return subfactorial(n) - parity_delta(n).value; }

ArbInt derangements_bruteforce(unsigned n) {
  if (n > kDerangementOracleMax) {
    throw OutOfOracleRange("derangement enumeration limited to n <= 8, got " + std::to_string(n));
  }
  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  unsigned long count = 0;
  do {
    bool fixed = false;
    for (unsigned i = 0; i < n && !fixed; ++i) fixed = perm[i] == i;
    if (!fixed) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return ArbInt(count);
}

namespace {

// Restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
unsigned long count_growth_strings(unsigned pos, unsigned n, unsigned max_block) {
  if (pos == n) return 1;
  unsigned long total = 0;
  for (unsigned b = 0; b <= max_block + 1; ++b) {
    total += count_growth_strings(pos + 1, n, std::max(max_block, b));
  }
  return total;
}

}  // namespace

ArbInt set_partitions_bruteforce(unsigned n) {
  if (n > kPartitionOracleMax) {
    throw OutOfOracleRange("set partition enumeration limited to n <= 6, got " + std::to_string(n));
  }
  if (n == 0) return ArbInt(1);
  return ArbInt(count_growth_strings(1, n, 0));
}

}  // namespace kurepa
