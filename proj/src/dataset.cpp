#include "lcongr/dataset.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <boost/crc.hpp>
#include <json.hpp>

#include "lcongr/errors.hpp"

#ifndef LCONGR_SOURCE_DIR
#define LCONGR_SOURCE_DIR "."
#endif

namespace lcongr {

namespace {

using nlohmann::json;

std::string where(std::size_t line_no) {
  return line_no ? "line " + std::to_string(line_no) + ": " : "";
}

std::uint32_t crc32(std::string_view bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

Rational rational_field(const json& j, const char* key, std::size_t line_no) {
  try {
    if (j.at(key).is_number_integer()) return Rational(j.at(key).get<std::int64_t>());
    return parse_rational(j.at(key).get<std::string>());
  } catch (const std::exception& e) {
    throw Error(ErrorKind::ValidationError, where(line_no) + "field '" + key + "': " + e.what());
  }
}

}  // namespace

CurveData parse_curve(std::string_view line, std::size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, where(line_no) + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::ParseError, where(line_no) + "expected a JSON object");
  auto require = [&](const char* key) -> const json& {
    if (!j.contains(key)) throw Error(ErrorKind::ValidationError, where(line_no) + "missing field '" + key + "'");
    return j.at(key);
  };
  CurveData c;
  try {
    c.label = require("label").get<std::string>();
    const json& a = require("ainvs");
    if (!a.is_array() || a.size() != 5) {
      throw Error(ErrorKind::ValidationError, where(line_no) + "field 'ainvs' must hold five integers");
    }
    for (std::size_t i = 0; i < 5; ++i) c.ainvs[i] = a[i].get<std::int64_t>();
    c.conductor = require("conductor").get<std::int64_t>();
    if (c.conductor <= 0) throw Error(ErrorKind::ValidationError, where(line_no) + "field 'conductor' must be positive");
    if (j.contains("root_number")) {
      const int w = j["root_number"].get<int>();
      if (w != 1 && w != -1) throw Error(ErrorKind::ValidationError, where(line_no) + "field 'root_number' must be +-1");
      c.root_number = w;
    }
    if (j.contains("c0")) {
      c.manin_c0 = j["c0"].get<std::int64_t>();
      if (c.manin_c0 <= 0) throw Error(ErrorKind::ValidationError, where(line_no) + "field 'c0' must be positive");
    }
    if (j.contains("lratio")) c.lratio_hint = rational_field(j, "lratio", line_no);
    if (j.contains("no_isogeny")) c.no_isogeny_primes = j["no_isogeny"].get<std::vector<std::int64_t>>();
    if (j.contains("galois_image_3")) c.galois_image_3 = j["galois_image_3"].get<std::string>();
    if (j.contains("bsd_quotient")) c.bsd_quotient = rational_field(j, "bsd_quotient", line_no);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ValidationError, where(line_no) + e.what());
  }
  try {
    validate_curve(c);
  } catch (const Error& e) {
    throw Error(e.kind(), where(line_no) + e.what());
  }
  return c;
}

void validate_curve(const CurveData& curve) {
  const BigInt disc = discriminant(curve);
  if (disc == 0) throw Error(ErrorKind::ValidationError, curve.label + ": field 'ainvs' gives a singular curve");
  for (std::int64_t p : prime_factors(curve.conductor)) {
    if (disc % p != 0) {
      throw Error(ErrorKind::ValidationError, curve.label + ": field 'conductor' has prime " + std::to_string(p) +
                                                  " not dividing the discriminant");
    }
  }
}

Dataset::Dataset(std::vector<CurveData> curves) : curves_(std::move(curves)) {
  for (std::size_t i = 0; i < curves_.size(); ++i) {
    if (!index_.emplace(curves_[i].label, i).second) {
      throw Error(ErrorKind::ValidationError, "duplicate label " + curves_[i].label);
    }
  }
}

const CurveData& Dataset::at(const std::string& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) throw Error(ErrorKind::UnknownLabel, "label not in dataset: " + label);
  return curves_[it->second];
}

Dataset ingest_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open dataset " + path.string());
  std::vector<CurveData> curves;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    curves.push_back(parse_curve(line, line_no));
  }
  return Dataset(std::move(curves));
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("LCONGR_DATA")) {
    return std::filesystem::path(env).parent_path();
  }
  return std::filesystem::path(LCONGR_SOURCE_DIR) / "data";
}

std::filesystem::path default_dataset_path() {
  if (const char* env = std::getenv("LCONGR_DATA")) return env;
  return default_data_dir() / "curves.jsonl";
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("LCONGR_CACHE_DIR")) return env;
  return ".lcongr-cache";
}

CoefficientCache::CoefficientCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path CoefficientCache::file_for(const std::string& label) const { return dir_ / (label + ".an"); }

CoefficientTable CoefficientCache::read(const std::string& label) const {
  std::ifstream in(file_for(label), std::ios::binary);
  if (!in) throw Error(ErrorKind::CorruptCache, "no cache file for " + label);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto crc_pos = text.rfind("crc32,");
  if (crc_pos == std::string::npos || (crc_pos > 0 && text[crc_pos - 1] != '\n')) {
    throw Error(ErrorKind::CorruptCache, label + ": missing checksum line");
  }
  const std::string body = text.substr(0, crc_pos);
  std::uint32_t stored = 0;
  try {
    stored = static_cast<std::uint32_t>(std::stoul(text.substr(crc_pos + 6), nullptr, 16));
  } catch (const std::exception&) {
    throw Error(ErrorKind::CorruptCache, label + ": unreadable checksum");
  }
  if (stored != crc32(body)) throw Error(ErrorKind::CorruptCache, label + ": checksum mismatch");
  CoefficientTable table;
  table.label = label;
  std::istringstream lines(body);
  std::string line;
  while (std::getline(lines, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::CorruptCache, label + ": malformed line");
    std::int64_t n = 0, an = 0;
    try {
      n = std::stoll(line.substr(0, comma));
      an = std::stoll(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::CorruptCache, label + ": malformed line");
    }
    if (n != table.nmax() + 1) throw Error(ErrorKind::CorruptCache, label + ": indices out of order");
    table.values.push_back(an);
  }
  return table;
}

void CoefficientCache::write(const CoefficientTable& table) const {
  std::filesystem::create_directories(dir_);
  std::string body;
  body.reserve(static_cast<std::size_t>(table.nmax()) * 8);
  for (std::int64_t n = 1; n <= table.nmax(); ++n) {
    body += std::to_string(n);
    body += ',';
    body += std::to_string(table.at(n));
    body += '\n';
  }
  std::ostringstream crc;
  crc << std::hex << crc32(body);
  const auto target = file_for(table.label);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << body << "crc32," << crc.str() << '\n';
    if (!out) throw Error(ErrorKind::CorruptCache, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

CoefficientTable CoefficientCache::load_or_build(const CurveData& curve, std::int64_t nmax) {
  std::lock_guard lock(mutex_);
  const bool exists = std::filesystem::exists(file_for(curve.label));
  if (exists) {
    try {
      CoefficientTable table = read(curve.label);
      if (table.nmax() >= nmax) {
        last_status_ = CacheStatus::Hit;
        return table;
      }
      last_status_ = CacheStatus::Miss;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CorruptCache) throw;
      last_status_ = CacheStatus::Rebuilt;
    }
  } else {
    last_status_ = CacheStatus::Miss;
  }
  CoefficientTable table = an_table(curve, nmax);
  table.label = curve.label;
  write(table);
  return table;
}

TableProvider CoefficientCache::provider() {
  return [this](const CurveData& curve, std::int64_t nmax) { return load_or_build(curve, nmax); };
}

}  // namespace lcongr
