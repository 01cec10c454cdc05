#pragma once

// Curve dataset ingestion and the on-disk a_n cache.

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "lcongr/ec_core.hpp"
#include "lcongr/lseries.hpp"

namespace lcongr {

// Parses one JSON-lines record; line_no only feeds error messages.
CurveData parse_curve(std::string_view line, std::size_t line_no = 0);
// Delta != 0 and every prime of the conductor divides Delta.
void validate_curve(const CurveData& curve);

class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<CurveData> curves);

  const std::vector<CurveData>& curves() const { return curves_; }
  bool contains(const std::string& label) const { return index_.count(label) > 0; }
  // Throws UnknownLabel ("label not in dataset").
  const CurveData& at(const std::string& label) const;

 private:
  std::vector<CurveData> curves_;
  std::map<std::string, std::size_t> index_;
};

Dataset ingest_dataset(const std::filesystem::path& path);
// $LCONGR_DATA, else the data/curves.jsonl of the source tree.
std::filesystem::path default_dataset_path();
// Directory holding galois_images.json.
std::filesystem::path default_data_dir();

enum class CacheStatus { Hit, Miss, Rebuilt };

// Files "<label>.an" with lines "n,a_n" and a closing "crc32,<hex>" line.
class CoefficientCache {
 public:
  explicit CoefficientCache(std::filesystem::path dir);

  CoefficientTable load_or_build(const CurveData& curve, std::int64_t nmax);
  // Reads a cache file; throws CorruptCache on a checksum or format error.
  CoefficientTable read(const std::string& label) const;
  void write(const CoefficientTable& table) const;
  TableProvider provider();

  CacheStatus last_status() const { return last_status_; }
  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path file_for(const std::string& label) const;

 private:
  std::filesystem::path dir_;
  mutable std::mutex mutex_;
  CacheStatus last_status_ = CacheStatus::Miss;
};

// $LCONGR_CACHE_DIR, else ".lcongr-cache" in the working directory.
std::filesystem::path default_cache_dir();

}  // namespace lcongr
