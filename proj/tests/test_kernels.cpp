#include <random>

#include "doctest.h"
#include "kurepa/exact.hpp"
#include "kurepa/kernels.hpp"
#include "kurepa/modular.hpp"
#include "oracles.hpp"

using namespace kurepa;
namespace simd = kurepa::simd;

namespace {

std::vector<std::uint32_t> random_moduli(std::mt19937& rng, std::size_t count) {
  std::uniform_int_distribution<std::uint32_t> dist(2, simd::kLaneModulusMax - 1);
  std::vector<std::uint32_t> out(count);
  for (auto& m : out) m = dist(rng);
  return out;
}

bool avx2_here() { return simd::detected_isa() == simd::Isa::avx2; }

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar zero scan matches the definition") {
    const std::vector<std::uint32_t> moduli{3, 5, 19, 2203, 4, 10, 32749};
    const auto got = simd::scalar::left_factorial_zero_scan(moduli);
    REQUIRE(got.size() == moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      const u64 m = moduli[i];
      const auto k = left_factorial_residues(Modulus(m), m);
      std::vector<std::uint32_t> zeros;
      for (u64 n = 1; n < m; ++n) {
        if (k[n] == 0) zeros.push_back(static_cast<std::uint32_t>(n));
      }
      CHECK(got[i].modulus == m);
      CHECK(got[i].zeros == zeros);
      CHECK(got[i].k_at_modulus == k[m]);
    }
    CHECK(got[2].zeros == std::vector<std::uint32_t>{7, 12, 16});
  }

  TEST_CASE("scalar Bell residues match exact Bell numbers") {
    const auto exact = bell_prefix(120);
    const std::vector<std::uint32_t> moduli{2, 3, 7, 97, 1000, 32749};
    const auto got = simd::scalar::bell_residues(moduli, 121);
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      REQUIRE(got[i].size() == 121);
      for (u64 n = 0; n <= 120; ++n) REQUIRE(got[i][n] == oracle::mod(exact[n], moduli[i]));
    }
  }

  TEST_CASE("AVX2 zero scan is equivalent to scalar") {
    if (!avx2_here()) {
      MESSAGE("AVX2 not available; equivalence skipped");
      return;
    }
    std::mt19937 rng(7);
    for (std::size_t count : {1u, 7u, 8u, 9u, 31u, 64u}) {
      auto moduli = random_moduli(rng, count);
      std::sort(moduli.begin(), moduli.end());
      const auto a = simd::scalar::left_factorial_zero_scan(moduli);
      const auto b = simd::avx2::left_factorial_zero_scan(moduli);
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].modulus == b[i].modulus);
        REQUIRE(a[i].zeros == b[i].zeros);
        REQUIRE(a[i].k_at_modulus == b[i].k_at_modulus);
      }
    }
    // unsorted lanes with very different lengths, including the largest lane modulus
    const std::vector<std::uint32_t> mixed{32767, 2, 9973, 3, 19, 32749, 4, 5, 6};
    const auto a = simd::scalar::left_factorial_zero_scan(mixed);
    const auto b = simd::avx2::left_factorial_zero_scan(mixed);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].zeros == b[i].zeros);
      CHECK(a[i].k_at_modulus == b[i].k_at_modulus);
    }
  }

  TEST_CASE("AVX2 Bell residues are equivalent to scalar") {
    if (!avx2_here()) {
      MESSAGE("AVX2 not available; equivalence skipped");
      return;
    }
    std::mt19937 rng(11);
    for (std::size_t count : {1u, 15u, 16u, 32u, 33u, 70u}) {
      const auto moduli = random_moduli(rng, count);
      for (std::uint32_t rows : {0u, 1u, 2u, 57u, 400u}) {
        REQUIRE(simd::scalar::bell_residues(moduli, rows) == simd::avx2::bell_residues(moduli, rows));
      }
    }
    const std::vector<std::uint32_t> edge{32767, 32766, 2, 3};
    CHECK(simd::scalar::bell_residues(edge, 300) == simd::avx2::bell_residues(edge, 300));
  }

  TEST_CASE("lane modulus range is enforced") {
    const std::vector<std::uint32_t> bad{5, simd::kLaneModulusMax};
    CHECK_THROWS_AS(simd::scalar::left_factorial_zero_scan(bad), std::invalid_argument);
    CHECK_THROWS_AS(simd::scalar::bell_residues(bad, 3), std::invalid_argument);
    const std::vector<std::uint32_t> one{1};
    CHECK_THROWS_AS(simd::left_factorial_zero_scan(one), std::invalid_argument);
  }

  TEST_CASE("dispatch can be forced to scalar") {
    const auto before = simd::active_isa();
    simd::set_active_isa(simd::Isa::scalar);
    CHECK(simd::active_isa() == simd::Isa::scalar);
    const std::vector<std::uint32_t> m{19};
    CHECK(simd::left_factorial_zero_scan(m)[0].zeros == std::vector<std::uint32_t>{7, 12, 16});
    simd::set_active_isa(before);
    CHECK(simd::isa_name(simd::Isa::avx2) == "avx2");
    if (!avx2_here()) CHECK_THROWS_AS(simd::set_active_isa(simd::Isa::avx2), std::invalid_argument);
  }
}
