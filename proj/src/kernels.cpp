#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kurepa/kernels.hpp"

namespace kurepa::simd {

namespace {

Isa initial_isa() noexcept {
  const char* env = std::getenv("KUREPA_SIMD");
  if (env != nullptr && std::string(env) == "scalar") return Isa::scalar;
  return detected_isa();
}

std::atomic<Isa>& active() noexcept {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

Isa detected_isa() noexcept {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  if (avx2::compiled() && __builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
  return Isa::scalar;
}

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2) {
    throw std::invalid_argument("AVX2 is not available on this machine");
  }
  active().store(isa, std::memory_order_relaxed);
}

std::vector<ZeroScan> left_factorial_zero_scan(std::span<const std::uint32_t> moduli) {
  if (active_isa() == Isa::avx2) return avx2::left_factorial_zero_scan(moduli);
  return scalar::left_factorial_zero_scan(moduli);
}

std::vector<std::vector<std::uint32_t>> bell_residues(std::span<const std::uint32_t> moduli,
                                                      std::uint32_t count) {
  if (active_isa() == Isa::avx2) return avx2::bell_residues(moduli, count);
  return scalar::bell_residues(moduli, count);
}

}  // namespace kurepa::simd
