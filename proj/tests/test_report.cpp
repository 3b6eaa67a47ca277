#include <filesystem>
#include <random>

#include "doctest.h"
#include "kurepa/report.hpp"

using namespace kurepa;

namespace {

std::vector<PrimeIndexRecord> random_records(std::mt19937& rng) {
  std::uniform_int_distribution<int> count(0, 30), pairs(0, 5), order(1, 3);
  std::vector<PrimeIndexRecord> out;
  u64 p = 2;
  const int n_records = count(rng);
  for (int i = 0; i < n_records; ++i) {
    do ++p; while (!is_prime(p));
    PrimeIndexRecord rec{p, {}};
    u64 n = 3;
    const int k = pairs(rng);
    for (int j = 0; j < k; ++j) {
      n += 4 + rng() % 50;
      rec.pairs.push_back({p, n, static_cast<unsigned>(order(rng))});
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("record formats round-trip") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
      const auto recs = random_records(rng);
      REQUIRE(parse_checkpoint(checkpoint_text(recs)) == recs);
      REQUIRE(parse_pairs_csv(pairs_csv(recs)) == recs);
      nlohmann::json j = nlohmann::json::array();
      for (const auto& r : recs) j.push_back(to_json(r));
      REQUIRE(records_from_json(nlohmann::json::parse(j.dump())) == recs);
      const auto rep = make_distribution(1000, recs);
      REQUIRE(distribution_from_json(to_json(rep)) == rep);
    }
  }

  TEST_CASE("distribution sums and rendering") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      const auto recs = random_records(rng);
      const auto rep = make_distribution(1000, recs);
      CHECK(rep.total == recs.size());
      u64 sum = 0, ratio_sum = 0;
      for (const auto& [r, c] : rep.histogram) {
        sum += c;
        const auto f = rep.ratio(r);
        if (rep.total) ratio_sum += f.num * (rep.total / f.den);
      }
      CHECK(sum == rep.total);
      if (rep.total) CHECK(ratio_sum == rep.total);
    }
    const std::vector<PrimeIndexRecord> recs{{3, {}}, {5, {{5, 4, 1}}}, {7, {{7, 6, 1}}}};
    const auto csv = distribution_csv(make_distribution(7, recs));
    CHECK(csv == "r,count,ratio,ratio_decimal\n0,1,1/3,0.33333\n1,2,2/3,0.66667\ntotal,3,1/1,1.00000\n");
  }

  TEST_CASE("pairs CSV layout") {
    const std::vector<PrimeIndexRecord> recs{{3, {}}, {19, {{19, 7, 1}, {19, 12, 1}}}};
    CHECK(pairs_csv(recs) == "prime,n,order\n3,,\n19,7,1\n19,12,1\n");
    CHECK_THROWS_AS(parse_pairs_csv("p,n\n"), FormatError);
    CHECK_THROWS_AS(parse_pairs_csv("prime,n,order\n19,x,1\n"), FormatError);
  }

  TEST_CASE("corrupted checkpoints are rejected") {
    const std::vector<PrimeIndexRecord> recs{{3, {}}, {5, {{5, 4, 1}}}};
    const auto text = checkpoint_text(recs);
    CHECK(text.ends_with("#count=2\n"));
    // truncated: the count line is gone
    CHECK_THROWS_AS(parse_checkpoint(text.substr(0, text.find("#count"))), FormatError);
    // one line lost, count kept
    const auto first_nl = text.find('\n');
    CHECK_THROWS_AS(parse_checkpoint(text.substr(first_nl + 1)), FormatError);
    CHECK_THROWS_AS(parse_checkpoint("5\t2\t4:1\n#count=1\n"), FormatError);
    CHECK_THROWS_AS(parse_checkpoint("5\t1\t4-1\n#count=1\n"), FormatError);
    CHECK(parse_checkpoint("#count=0\n").empty());
  }

  TEST_CASE("check results through JSON") {
    const auto a = make_check("touchard", 5, 5, 5, 0, 0);
    CHECK(check_from_json(to_json(a)) == a);
    const auto b = make_check("gap", 19, std::nullopt, 0, 4, 4, Polarity::must_hold, Relation::at_least);
    CHECK(check_from_json(to_json(b)) == b);
    const auto c = make_check("kh-prime", 7, std::nullopt, 7, 6, 0, Polarity::must_fail);
    CHECK(c.passed);
    CHECK(check_from_json(nlohmann::json::parse(to_json(c).dump())) == c);
    CHECK_THROWS_AS(check_from_json(nlohmann::json::object()), FormatError);
    const auto csv = checks_csv(std::vector<CheckResult>{a});
    CHECK(csv.starts_with("name,subject,aux,modulus,lhs,rhs,relation,polarity,passed\n"));
  }

  TEST_CASE("envelope and certificate JSON") {
    ReportEnvelope env;
    env.command = "scan";
    env.failures = 0;
    const auto j = env.to_json();
    CHECK(j.at("version") == std::string(kVersion));
    CHECK(j.at("command") == "scan");
    StabilizationCertificate c{5, 2, 2, 10, 25, 14, 10, 10, 2};
    const auto cj = to_json(c);
    CHECK(cj.at("stable_value") == 14);
    CHECK(cj.at("threshold") == 10);
  }

  TEST_CASE("atomic writes") {
    const auto dir = std::filesystem::temp_directory_path() / "kurepa-report-test";
    std::filesystem::create_directories(dir);
    const auto file = dir / "x.txt";
    write_atomic(file, "first");
    write_atomic(file, "second");
    CHECK(read_file(file) == "second");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
    CHECK(entries == 1);
    std::filesystem::remove_all(dir);
    CHECK_THROWS(read_file(dir / "missing"));
  }
}
