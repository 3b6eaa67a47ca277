#include "kurepa/check.hpp"

#include <utility>

namespace kurepa {

CheckResult make_check(std::string name, std::uint64_t subject, std::optional<std::uint64_t> aux,
                       std::uint64_t modulus, std::uint64_t lhs, std::uint64_t rhs, Polarity polarity,
                       Relation relation) {
  bool holds = false;
  switch (relation) {
    case Relation::congruent:
      holds = modulus <= 1 || lhs % modulus == rhs % modulus;
      break;
    case Relation::at_least:
      holds = lhs >= rhs;
      break;
    case Relation::at_most:
      holds = lhs <= rhs;
      break;
  }
  CheckResult r;
  r.name = std::move(name);
  r.subject = subject;
  r.aux = aux;
  r.modulus = modulus;
  r.lhs = lhs;
  r.rhs = rhs;
  r.relation = relation;
  r.polarity = polarity;
  r.passed = polarity == Polarity::must_hold ? holds : !holds;
  return r;
}

const char* to_string(Polarity p) noexcept { return p == Polarity::must_hold ? "must_hold" : "must_fail"; }

const char* to_string(Relation r) noexcept {
  switch (r) {
    case Relation::at_least:
      return "at_least";
    case Relation::at_most:
      return "at_most";
    case Relation::congruent:
      break;
  }
  return "congruent";
}

}  // namespace kurepa
