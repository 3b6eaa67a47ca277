#include "kurepa/modular.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kurepa {

Modulus::Modulus(u64 m) : m_(m) {
  if (m > kMax) throw ModulusOverflow("modulus " + std::to_string(m) + " exceeds 2^63");
  if (m < 2) throw std::invalid_argument("modulus must be >= 2");
}

u64 Modulus::pow(u64 base, u64 exp) const noexcept {
  u64 result = 1 % m_;
  base %= m_;
  while (exp != 0) {
    if (exp & 1) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return result;
}

u64 Modulus::from_signed(std::int64_t a) const noexcept {
  if (a >= 0) return static_cast<u64>(a) % m_;
  // -(a + 1) avoids overflow at INT64_MIN
  u64 mag = static_cast<u64>(-(a + 1)) + 1;
  return neg(mag % m_);
}

const Residue& Residue::check(const Residue& o) const {
  if (!(o.mod_ == mod_)) throw std::invalid_argument("residues with different moduli");
  return o;
}

u64 mod_inv(u64 a, const Modulus& m) {
  // Extended Euclid on (a, m) tracking only the coefficient of a, kept signed in 128 bits.
  __int128 old_r = m.reduce(a), r = m.value();
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) {
    throw NonInvertible(std::to_string(a) + " is not invertible mod " + std::to_string(m.value()));
  }
  __int128 mv = m.value();
  __int128 inv = old_s % mv;
  if (inv < 0) inv += mv;
  return static_cast<u64>(inv);
}

Residue mod_inv(const Residue& a) { return Residue(mod_inv(a.value(), a.modulus()), a.modulus()); }

bool pow_fits(u64 p, unsigned r) noexcept {
  u128 acc = 1;
  for (unsigned i = 0; i < r; ++i) {
    acc *= p;
    if (acc > Modulus::kMax) return false;
  }
  return true;
}

u64 checked_pow(u64 p, unsigned r) {
  if (!pow_fits(p, r)) {
    throw ModulusOverflow(std::to_string(p) + "^" + std::to_string(r) + " exceeds 2^63");
  }
  u64 acc = 1;
  for (unsigned i = 0; i < r; ++i) acc *= p;
  return acc;
}

PrimePower::PrimePower(u64 p, unsigned r) : p_(p), r_(r), m_(checked_pow(p, r < 1 ? 1 : r)) {
  if (r < 1) throw std::invalid_argument("prime power exponent must be >= 1");
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

std::vector<u64> sieve_primes(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  primes.push_back(2);
  // odd-only: index i stands for 2i + 1
  const u64 half = (limit - 1) / 2;
  std::vector<bool> composite(half + 1, false);
  for (u64 i = 1; i <= half; ++i) {
    if (composite[i]) continue;
    const u64 p = 2 * i + 1;
    primes.push_back(p);
    for (u64 j = (p * p - 1) / 2; j <= half; j += p) composite[j] = true;
  }
  return primes;
}

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 b : kBases) {
    if (n % b == 0) return n == b;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto mulmod = [n](u64 a, u64 b) { return static_cast<u64>(static_cast<u128>(a) * b % n); };
  auto powmod = [&](u64 a, u64 e) {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  for (u64 a : kBases) {
    u64 x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

u64 legendre_ord(u64 p, u64 n) {
  if (p < 2) throw std::invalid_argument("legendre_ord needs a prime");
  u64 ord = 0;
  while (n >= p) {
    n /= p;
    ord += n;
  }
  return ord;
}

u64 digit_sum(u64 p, u64 l) {
  if (p < 2) throw std::invalid_argument("digit_sum needs base >= 2");
  u64 s = 0;
  for (; l != 0; l /= p) s += l % p;
  return s;
}

std::vector<u64> left_factorial_residues(const Modulus& m, u64 n_max) {
  std::vector<u64> out;
  out.reserve(n_max + 1);
  u64 sum = 0;
  for (const auto& term : FactorialResidues(m, n_max)) {
    out.push_back(sum);  // K(k) = sum of j! for j < k
    sum = m.add(sum, term.value);
  }
  return out;
}

u64 left_factorial_mod(const Modulus& m, u64 n) {
  u64 sum = 0, fact = 1 % m.value();
  for (u64 k = 0; k < n; ++k) {
    sum = m.add(sum, fact);
    fact = m.mul(fact, k + 1);
  }
  return sum;
}

u64 factorial_mod(const Modulus& m, u64 k) {
  u64 fact = 1 % m.value();
  for (u64 j = 2; j <= k && fact != 0; ++j) fact = m.mul(fact, j);
  return fact;
}

std::vector<u64> subfactorial_residues(const Modulus& m, u64 n_max) {
  std::vector<u64> out;
  out.reserve(n_max + 1);
  u64 s = 1 % m.value();
  out.push_back(s);
  for (u64 n = 1; n <= n_max; ++n) {
    s = m.mul(s, n);
    s = (n & 1) ? m.sub(s, 1 % m.value()) : m.add(s, 1 % m.value());
    out.push_back(s);
  }
  return out;
}

}  // namespace kurepa

namespace kurepa {

u64 subfactorial_mod(const Modulus& m, u64 n) {
  const u64 one = 1 % m.value();
  u64 s = one;
  for (u64 k = 1; k <= n; ++k) {
    s = m.mul(s, k);
    s = (k & 1) ? m.sub(s, one) : m.add(s, one);
  }
  return s;
}

}  // namespace kurepa
