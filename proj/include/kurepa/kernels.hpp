#pragma once

// Batched residue kernels. Each lane carries its own modulus; lanes advance in
// lock step, so batches of nearby primes waste little work. A scalar reference
// and an AVX2 variant share one contract and are selected at runtime.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace kurepa::simd {

enum class Isa { scalar, avx2 };

/// Lane moduli must lie in [2, kLaneModulusMax): products of two residues then
/// stay below 2^30 and fit a 32-bit lane.
inline constexpr std::uint32_t kLaneModulusMax = 1u << 15;

std::string_view isa_name(Isa isa) noexcept;

/// Best ISA the CPU supports (and this build compiled in).
Isa detected_isa() noexcept;

/// ISA used by the dispatching entry points. Defaults to detected_isa(), or to
/// scalar when the environment variable KUREPA_SIMD=scalar is set.
Isa active_isa() noexcept;

/// Throws std::invalid_argument if isa is not supported here.
void set_active_isa(Isa isa);

struct ZeroScan {
  std::uint32_t modulus = 0;
  std::vector<std::uint32_t> zeros;  // n in [1, modulus-1] with K(n) = 0 (mod modulus), ascending
  std::uint32_t k_at_modulus = 0;    // K(modulus) mod modulus
};

/// For every modulus m: the n in [1, m-1] where K(n) = 0 (mod m), and K(m) mod m.
std::vector<ZeroScan> left_factorial_zero_scan(std::span<const std::uint32_t> moduli);

/// Bell numbers B_0 .. B_{count-1} reduced mod each modulus, via the Bell
/// (Aitken) triangle. Additions only.
std::vector<std::vector<std::uint32_t>> bell_residues(std::span<const std::uint32_t> moduli,
                                                      std::uint32_t count);

namespace scalar {
std::vector<ZeroScan> left_factorial_zero_scan(std::span<const std::uint32_t> moduli);
std::vector<std::vector<std::uint32_t>> bell_residues(std::span<const std::uint32_t> moduli,
                                                      std::uint32_t count);
}  // namespace scalar

namespace avx2 {
bool compiled() noexcept;
std::vector<ZeroScan> left_factorial_zero_scan(std::span<const std::uint32_t> moduli);
std::vector<std::vector<std::uint32_t>> bell_residues(std::span<const std::uint32_t> moduli,
                                                      std::uint32_t count);
}  // namespace avx2

}  // namespace kurepa::simd
