#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kurepa/check.hpp"
#include "kurepa/search.hpp"
#include "kurepa/stabilization.hpp"

namespace kurepa {

inline constexpr std::string_view kVersion = "1.0.0";

/// Malformed CSV, JSON, or checkpoint input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReportEnvelope {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t duration_ms = 0;
  nlohmann::json payload = nlohmann::json::object();
  std::uint64_t failures = 0;

  nlohmann::json to_json() const;
};

nlohmann::json to_json(const CheckResult& r);
nlohmann::json to_json(const PrimeIndexRecord& r);
nlohmann::json to_json(const DistributionReport& r);
nlohmann::json to_json(const StabilizationCertificate& c);

std::vector<PrimeIndexRecord> records_from_json(const nlohmann::json& records);
DistributionReport distribution_from_json(const nlohmann::json& j);
CheckResult check_from_json(const nlohmann::json& j);

/// Header `prime,n,order`, one row per pair; a prime without pairs gets `p,,`.
std::string pairs_csv(std::span<const PrimeIndexRecord> records);
std::vector<PrimeIndexRecord> parse_pairs_csv(std::string_view text);

/// Header `r,count,ratio,ratio_decimal`, then a `total` row.
std::string distribution_csv(const DistributionReport& rep);

/// Header `name,subject,aux,modulus,lhs,rhs,relation,polarity,passed`.
std::string checks_csv(std::span<const CheckResult> results);

/// One line per prime `p<TAB>index<TAB>n:order,...`, closed by `#count=<records>`.
std::string checkpoint_text(std::span<const PrimeIndexRecord> records);
/// Throws FormatError when the closing count line is missing or disagrees.
std::vector<PrimeIndexRecord> parse_checkpoint(std::string_view text);

/// Writes through a sibling temporary file and renames it into place.
void write_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace kurepa
