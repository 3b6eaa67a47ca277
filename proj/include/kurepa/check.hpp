#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace kurepa {

/// MustFail encodes a non-congruence claim: the check passes when the two
/// sides differ, so a counterexample shows up as a failure with its witness.
enum class Polarity { must_hold, must_fail };

/// How lhs and rhs are compared. Congruences compare residues mod `modulus`
/// (modulus 1 makes everything congruent); bounds compare plain integers.
enum class Relation { congruent, at_least, at_most };

struct CheckResult {
  std::string name;
  std::uint64_t subject = 0;          // n or p
  std::optional<std::uint64_t> aux;   // l, k, or Touchard's n
  std::uint64_t modulus = 0;          // 0 for bound checks
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
  Relation relation = Relation::congruent;
  Polarity polarity = Polarity::must_hold;
  bool passed = false;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

/// Builds a result and evaluates `passed` from the relation and polarity.
CheckResult make_check(std::string name, std::uint64_t subject, std::optional<std::uint64_t> aux,
                       std::uint64_t modulus, std::uint64_t lhs, std::uint64_t rhs,
                       Polarity polarity = Polarity::must_hold,
                       Relation relation = Relation::congruent);

const char* to_string(Polarity p) noexcept;
const char* to_string(Relation r) noexcept;

}  // namespace kurepa
