#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "lcongr/dataset.hpp"
#include "lcongr/lseries.hpp"

namespace testing {

inline const lcongr::Dataset& corpus() {
  static const lcongr::Dataset data = lcongr::ingest_dataset(lcongr::default_dataset_path());
  return data;
}

inline const lcongr::CurveData& curve(const std::string& label) { return corpus().at(label); }

// One LSeries per label so coefficient tables are shared between test cases.
inline const lcongr::LSeries& series(const std::string& label) {
  static std::mutex mutex;
  static std::map<std::string, std::unique_ptr<lcongr::LSeries>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[label];
  if (!slot) slot = std::make_unique<lcongr::LSeries>(curve(label));
  return *slot;
}

}  // namespace testing
