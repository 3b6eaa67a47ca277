#include "kurepa/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace kurepa {

using nlohmann::json;

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

u64 parse_u64(std::string_view s, std::string_view what) {
  u64 v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw FormatError("bad " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

Relation relation_from(std::string_view s) {
  if (s == "at_least") return Relation::at_least;
  if (s == "at_most") return Relation::at_most;
  if (s == "congruent") return Relation::congruent;
  throw FormatError("bad relation: " + std::string(s));
}

}  // namespace

json ReportEnvelope::to_json() const {
  return json{{"command", command}, {"params", params},   {"version", std::string(kVersion)},
              {"duration_ms", duration_ms}, {"payload", payload}, {"failures", failures}};
}

json to_json(const CheckResult& r) {
  json j{{"name", r.name},
         {"subject", r.subject},
         {"aux", r.aux ? json(*r.aux) : json(nullptr)},
         {"modulus", r.modulus},
         {"lhs", r.lhs},
         {"rhs", r.rhs},
         {"relation", to_string(r.relation)},
         {"polarity", to_string(r.polarity)},
         {"passed", r.passed}};
  return j;
}

CheckResult check_from_json(const json& j) {
  try {
    CheckResult r;
    r.name = j.at("name").get<std::string>();
    r.subject = j.at("subject").get<u64>();
    if (!j.at("aux").is_null()) r.aux = j.at("aux").get<u64>();
    r.modulus = j.at("modulus").get<u64>();
    r.lhs = j.at("lhs").get<u64>();
    r.rhs = j.at("rhs").get<u64>();
    r.relation = relation_from(j.at("relation").get<std::string>());
    r.polarity = j.at("polarity").get<std::string>() == "must_fail" ? Polarity::must_fail : Polarity::must_hold;
    r.passed = j.at("passed").get<bool>();
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad check result: ") + e.what());
  }
}

json to_json(const PrimeIndexRecord& r) {
  json pairs = json::array();
  for (const auto& pair : r.pairs) pairs.push_back({{"n", pair.n}, {"order", pair.order}});
  return json{{"prime", r.p}, {"index", r.index()}, {"pairs", pairs}};
}

std::vector<PrimeIndexRecord> records_from_json(const json& records) {
  std::vector<PrimeIndexRecord> out;
  try {
    for (const auto& j : records) {
      PrimeIndexRecord rec{j.at("prime").get<u64>(), {}};
      for (const auto& pair : j.at("pairs")) {
        rec.pairs.push_back({rec.p, pair.at("n").get<u64>(), pair.at("order").get<unsigned>()});
      }
      if (rec.index() != j.at("index").get<std::size_t>()) throw FormatError("index disagrees with pair list");
      out.push_back(std::move(rec));
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad record list: ") + e.what());
  }
  return out;
}

json to_json(const DistributionReport& r) {
  json hist = json::array();
  for (const auto& [index, count] : r.histogram) {
    const auto ratio = r.ratio(index);
    hist.push_back({{"r", index}, {"count", count}, {"ratio", ratio.str()}, {"ratio_decimal", ratio.decimal(5)}});
  }
  return json{{"limit", r.limit}, {"N", r.total}, {"max_index", r.max_index()}, {"histogram", hist}};
}

DistributionReport distribution_from_json(const json& j) {
  try {
    DistributionReport r;
    r.limit = j.at("limit").get<u64>();
    r.total = j.at("N").get<u64>();
    for (const auto& h : j.at("histogram")) r.histogram[h.at("r").get<unsigned>()] = h.at("count").get<u64>();
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad distribution: ") + e.what());
  }
}

json to_json(const StabilizationCertificate& c) {
  return json{{"p", c.p},
              {"r", c.r},
              {"l_r", c.l_r},
              {"threshold", c.threshold},
              {"modulus", c.modulus},
              {"stable_value", c.stable_value},
              {"window", c.window},
              {"first_stable", c.first_stable},
              {"ord_at_threshold", c.ord_at_threshold}};
}

std::string pairs_csv(std::span<const PrimeIndexRecord> records) {
  std::ostringstream out;
  out << "prime,n,order\n";
  for (const auto& rec : records) {
    if (rec.pairs.empty()) out << rec.p << ",,\n";
    for (const auto& pair : rec.pairs) out << rec.p << ',' << pair.n << ',' << pair.order << '\n';
  }
  return out.str();
}

std::vector<PrimeIndexRecord> parse_pairs_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "prime,n,order") throw FormatError("missing pairs CSV header");
  std::vector<PrimeIndexRecord> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cols = split(lines[i], ',');
    if (cols.size() != 3) throw FormatError("pairs CSV row needs 3 columns: " + std::string(lines[i]));
    const u64 p = parse_u64(cols[0], "prime");
    if (out.empty() || out.back().p != p) out.push_back({p, {}});
    if (cols[1].empty() && cols[2].empty()) continue;
    out.back().pairs.push_back({p, parse_u64(cols[1], "n"), static_cast<unsigned>(parse_u64(cols[2], "order"))});
  }
  return out;
}

std::string distribution_csv(const DistributionReport& rep) {
  std::ostringstream out;
  out << "r,count,ratio,ratio_decimal\n";
  for (const auto& [index, count] : rep.histogram) {
    const auto ratio = rep.ratio(index);
    out << index << ',' << count << ',' << ratio.str() << ',' << ratio.decimal(5) << '\n';
  }
  out << "total," << rep.total << ",1/1,1.00000\n";
  return out.str();
}

std::string checks_csv(std::span<const CheckResult> results) {
  std::ostringstream out;
  out << "name,subject,aux,modulus,lhs,rhs,relation,polarity,passed\n";
  for (const auto& r : results) {
    out << r.name << ',' << r.subject << ',';
    if (r.aux) out << *r.aux;
    out << ',' << r.modulus << ',' << r.lhs << ',' << r.rhs << ',' << to_string(r.relation) << ','
        << to_string(r.polarity) << ',' << (r.passed ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string checkpoint_text(std::span<const PrimeIndexRecord> records) {
  std::ostringstream out;
  for (const auto& rec : records) {
    out << rec.p << '\t' << rec.index() << '\t';
    for (std::size_t i = 0; i < rec.pairs.size(); ++i) {
      if (i) out << ',';
      out << rec.pairs[i].n << ':' << rec.pairs[i].order;
    }
    out << '\n';
  }
  out << "#count=" << records.size() << '\n';
  return out.str();
}

std::vector<PrimeIndexRecord> parse_checkpoint(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || !lines.back().starts_with("#count=")) throw FormatError("checkpoint lacks its #count line");
  const u64 count = parse_u64(lines.back().substr(7), "checkpoint count");
  if (count != lines.size() - 1) {
    throw FormatError("checkpoint count " + std::to_string(count) + " but " + std::to_string(lines.size() - 1) +
                      " records");
  }
  std::vector<PrimeIndexRecord> out;
  out.reserve(count);
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
    const auto cols = split(lines[i], '\t');
    if (cols.size() != 3) throw FormatError("checkpoint line needs 3 fields: " + std::string(lines[i]));
    PrimeIndexRecord rec{parse_u64(cols[0], "prime"), {}};
    if (!cols[2].empty()) {
      for (auto item : split(cols[2], ',')) {
        const auto colon = item.find(':');
        if (colon == std::string_view::npos) throw FormatError("bad pair: " + std::string(item));
        rec.pairs.push_back({rec.p, parse_u64(item.substr(0, colon), "n"),
                             static_cast<unsigned>(parse_u64(item.substr(colon + 1), "order"))});
      }
    }
    if (rec.index() != parse_u64(cols[1], "index")) throw FormatError("index disagrees with pair list");
    out.push_back(std::move(rec));
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::filesystem::filesystem_error("cannot open for writing", tmp, std::make_error_code(std::errc::io_error));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::filesystem::filesystem_error("write failed", tmp, std::make_error_code(std::errc::io_error));
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::filesystem::filesystem_error("cannot open for reading", path, std::make_error_code(std::errc::no_such_file_or_directory));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace kurepa
