// Compiled with -mavx2; only entered after a runtime CPU check.

#include <algorithm>
#include <array>
#include <stdexcept>

#include "kurepa/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace kurepa::simd::avx2 {

#if defined(__AVX2__)

namespace {

constexpr std::size_t kLanes = 8;


void check_moduli(std::span<const std::uint32_t> moduli) {
  for (auto m : moduli) {
    if (m < 2 || m >= kLaneModulusMax) throw std::invalid_argument("lane modulus out of range");
  }
}

// Unused lanes carry modulus 2 and are discarded.
std::array<std::uint32_t, kLanes> load_lanes(std::span<const std::uint32_t> moduli, std::size_t base,
                                             std::size_t& active) {
  std::array<std::uint32_t, kLanes> lanes;
  lanes.fill(2);
  active = std::min(kLanes, moduli.size() - base);
  std::copy_n(moduli.begin() + static_cast<std::ptrdiff_t>(base), active, lanes.begin());
  return lanes;
}

inline __m256i add_mod(__m256i a, __m256i b, __m256i m) {
  __m256i s = _mm256_add_epi32(a, b);
  return _mm256_min_epu32(s, _mm256_sub_epi32(s, m));
}

// a, b < m < 2^15. The float quotient is within one of the true quotient, so
// the remainder lands in [-m, 2m) and two corrections finish it.
inline __m256i mul_mod(__m256i a, __m256i b, __m256i m, __m256 inv_m) {
  __m256i prod = _mm256_mullo_epi32(a, b);
  __m256i q = _mm256_cvttps_epi32(_mm256_mul_ps(_mm256_cvtepi32_ps(prod), inv_m));
  __m256i r = _mm256_sub_epi32(prod, _mm256_mullo_epi32(q, m));
  r = _mm256_add_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(_mm256_setzero_si256(), r), m));
  return _mm256_min_epu32(r, _mm256_sub_epi32(r, m));
}

}  // namespace

bool compiled() noexcept { return true; }

std::vector<ZeroScan> left_factorial_zero_scan(std::span<const std::uint32_t> moduli) {
  check_moduli(moduli);
  std::vector<ZeroScan> out(moduli.size());
  for (std::size_t base = 0; base < moduli.size(); base += kLanes) {
    std::size_t active = 0;
    const auto lanes = load_lanes(moduli, base, active);
    const std::uint32_t n_end = *std::max_element(lanes.begin(), lanes.begin() + active);

    const __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lanes.data()));
    const __m256 inv_m = _mm256_div_ps(_mm256_set1_ps(1.0f), _mm256_cvtepi32_ps(m));
    const int live = (1 << active) - 1;
    __m256i sum = _mm256_setzero_si256();
    __m256i fact = _mm256_set1_epi32(1);
    __m256i k_at_m = _mm256_setzero_si256();

    for (std::uint32_t n = 1; n <= n_end; ++n) {
      const __m256i nv = _mm256_set1_epi32(static_cast<int>(n));
      sum = add_mod(sum, fact, m);  // K(n)
      const __m256i below = _mm256_cmpgt_epi32(m, nv);
      const __m256i zero = _mm256_cmpeq_epi32(sum, _mm256_setzero_si256());
      int hits = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_and_si256(zero, below))) & live;
      while (hits) {
        const int lane = __builtin_ctz(static_cast<unsigned>(hits));
        out[base + lane].zeros.push_back(n);
        hits &= hits - 1;
      }
      k_at_m = _mm256_blendv_epi8(k_at_m, sum, _mm256_cmpeq_epi32(nv, m));
      fact = mul_mod(fact, nv, m, inv_m);
    }

    alignas(32) std::array<std::uint32_t, kLanes> k_lanes;
    _mm256_store_si256(reinterpret_cast<__m256i*>(k_lanes.data()), k_at_m);
    for (std::size_t lane = 0; lane < active; ++lane) {
      out[base + lane].modulus = lanes[lane];
      out[base + lane].k_at_modulus = k_lanes[lane];
    }
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> bell_residues(std::span<const std::uint32_t> moduli,
                                                      std::uint32_t count) {
  check_moduli(moduli);
  std::vector<std::vector<std::uint32_t>> out(moduli.size());
  for (auto& v : out) v.reserve(count);
  if (count == 0) return out;

  // Moduli below 2^15 keep residue sums below 2^16, so 16-bit lanes suffice.
  // Two independent vectors per triangle entry give 32 primes per pass and
  // two interleaved dependency chains along each row.
  constexpr std::size_t kBellLanes = 32;
  struct Pair {
    __m256i lo, hi;
  };
  std::vector<Pair> prev(count), cur(count);
  for (std::size_t base = 0; base < moduli.size(); base += kBellLanes) {
    const std::size_t active = std::min(kBellLanes, moduli.size() - base);
    alignas(32) std::array<std::uint16_t, kBellLanes> lanes;
    lanes.fill(2);
    for (std::size_t i = 0; i < active; ++i) lanes[i] = static_cast<std::uint16_t>(moduli[base + i]);
    const __m256i m_lo = _mm256_load_si256(reinterpret_cast<const __m256i*>(lanes.data()));
    const __m256i m_hi = _mm256_load_si256(reinterpret_cast<const __m256i*>(lanes.data() + 16));
    alignas(32) std::array<std::uint16_t, kBellLanes> head;

    prev[0].lo = prev[0].hi = _mm256_set1_epi16(1);
    for (std::uint32_t row = 0; row < count; ++row) {
      if (row > 0) {
        cur[0] = prev[row - 1];
        __m256i lo = cur[0].lo, hi = cur[0].hi;
        for (std::uint32_t j = 1; j <= row; ++j) {
          __m256i s_lo = _mm256_add_epi16(lo, prev[j - 1].lo);
          __m256i s_hi = _mm256_add_epi16(hi, prev[j - 1].hi);
          lo = _mm256_min_epu16(s_lo, _mm256_sub_epi16(s_lo, m_lo));
          hi = _mm256_min_epu16(s_hi, _mm256_sub_epi16(s_hi, m_hi));
          cur[j].lo = lo;
          cur[j].hi = hi;
        }
        prev.swap(cur);
      }
      _mm256_store_si256(reinterpret_cast<__m256i*>(head.data()), prev[0].lo);
      _mm256_store_si256(reinterpret_cast<__m256i*>(head.data() + 16), prev[0].hi);
      // row 0 holds a bare 1, which is 1 mod every lane modulus >= 2
      for (std::size_t lane = 0; lane < active; ++lane) out[base + lane].push_back(head[lane]);
    }
  }
  return out;
}

#else

bool compiled() noexcept { return false; }

std::vector<ZeroScan> left_factorial_zero_scan(std::span<const std::uint32_t>) {
  throw std::logic_error("AVX2 kernels not compiled in");
}

std::vector<std::vector<std::uint32_t>> bell_residues(std::span<const std::uint32_t>, std::uint32_t) {
  throw std::logic_error("AVX2 kernels not compiled in");
}

#endif

}  // namespace kurepa::simd::avx2
