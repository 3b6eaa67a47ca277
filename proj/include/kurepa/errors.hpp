#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kurepa {

/// Modulus or prime power does not fit the double-wide product bound.
class ModulusOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class NonInvertible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Brute-force oracle asked for an argument beyond its enumeration cutoff.
class OutOfOracleRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// K(p) = 0 (mod p) for an odd prime p. Never expected; carries the witness.
class KHViolation : public std::runtime_error {
 public:
  explicit KHViolation(std::uint64_t p)
      : std::runtime_error("K(p) == 0 (mod p) at p = " + std::to_string(p)), prime_(p) {}

  std::uint64_t prime() const noexcept { return prime_; }

 private:
  std::uint64_t prime_;
};

}  // namespace kurepa
