#include "kurepa/stabilization.hpp"

#include <stdexcept>
#include <string>

namespace kurepa {

u64 compute_l_r(u64 p, unsigned r) {
  if (p < 2 || !is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  // l = r always qualifies, so the scan stops by then
  for (u64 l = 1;; ++l) {
    if (l + (l - digit_sum(p, l)) / (p - 1) >= r) return l;
  }
}

StabilizationCertificate verify_stabilization(u64 p, unsigned r, u64 window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  const PrimePower pp(p, r);
  const Modulus& m = pp.modulus();

  StabilizationCertificate cert;
  cert.p = p;
  cert.r = r;
  cert.l_r = compute_l_r(p, r);
  cert.threshold = cert.l_r * p;
  cert.modulus = m.value();
  cert.window = window;
  cert.ord_at_threshold = legendre_ord(p, cert.threshold);
  if (cert.ord_at_threshold < r) throw std::logic_error("threshold factorial not divisible by p^r");

  const auto values = left_factorial_residues(m, cert.threshold + window);
  cert.stable_value = values[cert.threshold];
  for (u64 n = cert.threshold; n < values.size(); ++n) {
    if (values[n] != cert.stable_value) {
      throw std::logic_error("K(n) mod p^r changes at n = " + std::to_string(n) + " past the threshold");
    }
  }
  u64 first = cert.threshold;
  while (first > 0 && values[first - 1] == cert.stable_value) --first;
  cert.first_stable = first;
  return cert;
}

CheckResult check_l_r_bound(u64 p, unsigned r_max) {
  if (r_max < 1) throw std::invalid_argument("r_max must be >= 1");
  u64 prev = 0;
  for (unsigned r = 1; r <= r_max; ++r) {
    const u64 l = compute_l_r(p, r);
    if (l > r) {
      return make_check("l_r-bound", p, r, 0, l, r, Polarity::must_hold, Relation::at_most);
    }
    if (l < prev) {
      return make_check("l_r-monotone", p, r, 0, l, prev, Polarity::must_hold, Relation::at_least);
    }
    prev = l;
  }
  return make_check("l_r-bound", p, r_max, 0, prev, r_max, Polarity::must_hold, Relation::at_most);
}

}  // namespace kurepa
