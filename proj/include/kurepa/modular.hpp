#pragma once

#include <cstdint>
#include <iterator>
#include <vector>

#include "kurepa/errors.hpp"

namespace kurepa {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// A modulus m with 2 <= m <= 2^63. Products are formed in 128 bits, so every
/// operation is exact over the whole range.
class Modulus {
 public:
  static constexpr u64 kMax = u64{1} << 63;

  /// Throws ModulusOverflow for m > kMax and std::invalid_argument for m < 2.
  explicit Modulus(u64 m);

  u64 value() const noexcept { return m_; }

  u64 reduce(u64 a) const noexcept { return a % m_; }
  u64 add(u64 a, u64 b) const noexcept {
    u64 s = a + b;  // a, b < 2^63, no wrap
    return s >= m_ ? s - m_ : s;
  }
  u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + (m_ - b); }
  u64 neg(u64 a) const noexcept { return a == 0 ? 0 : m_ - a; }
  u64 mul(u64 a, u64 b) const noexcept { return static_cast<u64>(static_cast<u128>(a) * b % m_); }
  u64 pow(u64 base, u64 exp) const noexcept;

  /// Residue of a signed integer.
  u64 from_signed(std::int64_t a) const noexcept;

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  u64 m_;
};

/// A value in [0, m) tied to its modulus.
class Residue {
 public:
  Residue(u64 value, Modulus m) : value_(m.reduce(value)), mod_(m) {}

  u64 value() const noexcept { return value_; }
  const Modulus& modulus() const noexcept { return mod_; }

  Residue operator+(const Residue& o) const { return {mod_.add(value_, check(o).value_), mod_, raw}; }
  Residue operator-(const Residue& o) const { return {mod_.sub(value_, check(o).value_), mod_, raw}; }
  Residue operator*(const Residue& o) const { return {mod_.mul(value_, check(o).value_), mod_, raw}; }
  Residue operator-() const { return {mod_.neg(value_), mod_, raw}; }

  friend bool operator==(const Residue&, const Residue&) = default;

 private:
  struct Raw {};
  static constexpr Raw raw{};
  Residue(u64 value, Modulus m, Raw) : value_(value), mod_(m) {}
  const Residue& check(const Residue& o) const;

  u64 value_;
  Modulus mod_;
};

/// Inverse by the extended Euclidean algorithm; valid for composite moduli.
/// Throws NonInvertible when gcd(a, m) != 1.
Residue mod_inv(const Residue& a);
u64 mod_inv(u64 a, const Modulus& m);

/// p^r with p prime. Throws ModulusOverflow if p^r exceeds Modulus::kMax and
/// std::invalid_argument if p is not prime or r < 1.
class PrimePower {
 public:
  PrimePower(u64 p, unsigned r);

  u64 prime() const noexcept { return p_; }
  unsigned exponent() const noexcept { return r_; }
  const Modulus& modulus() const noexcept { return m_; }

 private:
  u64 p_;
  unsigned r_;
  Modulus m_;
};

/// p^r, or ModulusOverflow if it exceeds Modulus::kMax.
u64 checked_pow(u64 p, unsigned r);
bool pow_fits(u64 p, unsigned r) noexcept;

/// Primes <= limit, ascending.
std::vector<u64> sieve_primes(u64 limit);

/// Deterministic Miller-Rabin over the first twelve prime bases; exact for all 64-bit n.
bool is_prime(u64 n) noexcept;

/// Exponent of p in n!.
u64 legendre_ord(u64 p, u64 n);

/// Sum of the base-p digits of l.
u64 digit_sum(u64 p, u64 l);

struct FactorialTerm {
  u64 k;
  u64 value;  // k! mod m
};

/// Input range over (k, k! mod m) for k = 0..n_max, one multiplication per step.
class FactorialResidues {
 public:
  FactorialResidues(Modulus m, u64 n_max) : mod_(m), n_max_(n_max) {}

  class iterator {
   public:
    using value_type = FactorialTerm;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    const FactorialTerm& operator*() const { return term_; }
    const FactorialTerm* operator->() const { return &term_; }
    iterator& operator++() {
      ++term_.k;
      term_.value = mod_->mul(term_.value, term_.k);
      return *this;
    }
    void operator++(int) { ++*this; }
    bool operator==(std::default_sentinel_t) const { return term_.k > n_max_; }

   private:
    friend class FactorialResidues;
    iterator(const Modulus* m, u64 n_max) : mod_(m), n_max_(n_max), term_{0, m->reduce(1)} {}
    const Modulus* mod_ = nullptr;
    u64 n_max_ = 0;
    FactorialTerm term_{};
  };

  iterator begin() const { return iterator(&mod_, n_max_); }
  std::default_sentinel_t end() const { return {}; }

 private:
  Modulus mod_;
  u64 n_max_;
};

/// K(n) mod m for n = 0..n_max (n_max + 1 entries).
std::vector<u64> left_factorial_residues(const Modulus& m, u64 n_max);

/// K(n) mod m for a single n without materializing the prefix.
u64 left_factorial_mod(const Modulus& m, u64 n);

/// k! mod m.
u64 factorial_mod(const Modulus& m, u64 k);

/// S(n) mod m for n = 0..n_max via S(n) = n S(n-1) + (-1)^n.
std::vector<u64> subfactorial_residues(const Modulus& m, u64 n_max);

}  // namespace kurepa

namespace kurepa {

/// S(n) mod m for a single n by streaming.
u64 subfactorial_mod(const Modulus& m, u64 n);

}  // namespace kurepa
