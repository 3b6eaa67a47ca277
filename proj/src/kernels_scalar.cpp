#include <stdexcept>

#include "kurepa/kernels.hpp"

namespace kurepa::simd::scalar {

namespace {

void check_moduli(std::span<const std::uint32_t> moduli) {
  for (auto m : moduli) {
    if (m < 2 || m >= kLaneModulusMax) throw std::invalid_argument("lane modulus out of range");
  }
}

}  // namespace

std::vector<ZeroScan> left_factorial_zero_scan(std::span<const std::uint32_t> moduli) {
  check_moduli(moduli);
  std::vector<ZeroScan> out(moduli.size());
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const std::uint32_t m = moduli[i];
    std::uint32_t sum = 0, fact = 1;
    out[i].modulus = m;
    for (std::uint32_t n = 1; n <= m; ++n) {
      sum += fact;
      if (sum >= m) sum -= m;
      if (n < m && sum == 0) out[i].zeros.push_back(n);
      fact = fact * n % m;
    }
    out[i].k_at_modulus = sum;
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> bell_residues(std::span<const std::uint32_t> moduli,
                                                      std::uint32_t count) {
  check_moduli(moduli);
  std::vector<std::vector<std::uint32_t>> out(moduli.size());
  std::vector<std::uint32_t> prev, cur;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const std::uint32_t m = moduli[i];
    auto& bell = out[i];
    bell.reserve(count);
    prev.assign(1, 1);
    for (std::uint32_t row = 0; row < count; ++row) {
      if (row > 0) {
        cur.resize(row + 1);
        cur[0] = prev[row - 1];
        for (std::uint32_t j = 1; j <= row; ++j) {
          std::uint32_t s = cur[j - 1] + prev[j - 1];
          cur[j] = s >= m ? s - m : s;
        }
        prev.swap(cur);
      }
      bell.push_back(prev[0] % m);
    }
  }
  return out;
}

}  // namespace kurepa::simd::scalar
