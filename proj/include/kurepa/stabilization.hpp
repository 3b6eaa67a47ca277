#pragma once

#include <cstdint>

#include "kurepa/check.hpp"
#include "kurepa/modular.hpp"

namespace kurepa {

/// K(n) mod p^r is constant from `threshold` = l_r * p on.
struct StabilizationCertificate {
  u64 p = 0;
  unsigned r = 0;
  u64 l_r = 0;
  u64 threshold = 0;
  u64 modulus = 0;        // p^r
  u64 stable_value = 0;   // K(threshold) mod p^r
  u64 window = 0;         // values checked past the threshold
  u64 first_stable = 0;   // smallest n from which the checked values are constant
  u64 ord_at_threshold = 0;  // ord_p(threshold!), >= r

  friend bool operator==(const StabilizationCertificate&, const StabilizationCertificate&) = default;
};

/// Minimal l with l + (l - digit_sum(p, l)) / (p - 1) >= r, i.e. ord_p((l p)!) >= r.
u64 compute_l_r(u64 p, unsigned r);

/// Streams K(n) mod p^r through threshold + window and certifies constancy from
/// the threshold. Throws ModulusOverflow if p^r is out of bounds,
/// std::invalid_argument for a non-prime p, r < 1, or window < 1, and
/// std::logic_error if the streamed values are not constant (never expected).
StabilizationCertificate verify_stabilization(u64 p, unsigned r, u64 window);

/// l_r <= r and l_r nondecreasing for r = 1..r_max. One aggregated result; on
/// failure lhs/rhs carry the offending l_r and its bound.
CheckResult check_l_r_bound(u64 p, unsigned r_max);

}  // namespace kurepa
