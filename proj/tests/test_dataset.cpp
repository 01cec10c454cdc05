#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include "lcongr/dataset.hpp"
#include "lcongr/errors.hpp"
#include "lcongr/report.hpp"
#include "support.hpp"

using namespace lcongr;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lcongr-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ErrorKind ingest_kind(const std::string& text) {
  const fs::path file = scratch_dir("ingest") / "curves.jsonl";
  std::ofstream(file) << text;
  try {
    ingest_dataset(file);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("bundled corpus loads") {
  CHECK(testing::corpus().curves().size() >= 40);
  CHECK(testing::corpus().contains("1638j3"));
  CHECK_THROWS_AS(testing::corpus().at("nope"), Error);
}

TEST_CASE("ingestion errors") {
  CHECK(ingest_kind(R"({"label": "x", "ainvs": [0, 0, 0, 0, 0], "conductor": 1})") == ErrorKind::ValidationError);
  CHECK(ingest_kind(R"({"label": "x", "ainvs": [0, -1, 1, -10, -20], "conductor": 13})") == ErrorKind::ValidationError);
  CHECK(ingest_kind("{\"label\": \"11a1\", \"ainvs\": [0, -1, 1, -10, -20], \"conductor\": 11}\n"
                    "{\"label\": \"11a1\", \"ainvs\": [0, -1, 1, -10, -20], \"conductor\": 11}\n") ==
        ErrorKind::ValidationError);
  CHECK(ingest_kind(R"({"label": "x", "ainvs": [0, -1, 1]})") == ErrorKind::ValidationError);
  CHECK(ingest_kind(R"({"label": "x", "ainvs": [0, -1, 1, -10, -20]})") == ErrorKind::ValidationError);
  CHECK(ingest_kind("not json") == ErrorKind::ParseError);
  try {
    parse_curve("{", 7);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 7") != std::string::npos);
  }
}

TEST_CASE("coefficient cache round trip and corruption") {
  const fs::path dir = scratch_dir("cache");
  CoefficientCache cache(dir);
  const CurveData& E = testing::curve("11a1");
  const CoefficientTable built = cache.load_or_build(E, 10'000);
  CHECK(cache.last_status() == CacheStatus::Miss);
  const CoefficientTable again = cache.load_or_build(E, 10'000);
  CHECK(cache.last_status() == CacheStatus::Hit);
  CHECK(again.values == built.values);
  CHECK(built.values == an_table(E, 10'000).values);

  std::vector<std::thread> readers;
  std::vector<bool> same(4, false);
  for (int i = 0; i < 4; ++i) {
    readers.emplace_back([&, i] { same[i] = cache.read("11a1").values == built.values; });
  }
  for (auto& t : readers) t.join();
  for (bool s : same) CHECK(s);

  fs::resize_file(cache.file_for("11a1"), fs::file_size(cache.file_for("11a1")) / 2);
  CHECK_THROWS_AS(cache.read("11a1"), Error);
  const CoefficientTable rebuilt = cache.load_or_build(E, 10'000);
  CHECK(cache.last_status() == CacheStatus::Rebuilt);
  CHECK(rebuilt.values == built.values);
  fs::remove_all(dir);
}

TEST_CASE("warm and cold cache give the same L-values") {
  const fs::path dir = scratch_dir("coherence");
  CoefficientCache cache(dir);
  const auto chi = parse_character("7:3:chi(3)=z2");
  const LSeries cold(testing::curve("1356d1"));
  const LSeries warm1(testing::curve("1356d1"), cache.provider());
  const LSeries warm2(testing::curve("1356d1"), cache.provider());
  const std::string a = dump(to_json(cold.algebraic_twisted(chi)));
  CHECK(dump(to_json(warm1.algebraic_twisted(chi))) == a);
  CHECK(dump(to_json(warm2.algebraic_twisted(chi))) == a);
  fs::remove_all(dir);
}

TEST_CASE("reports are deterministic") {
  const auto chi = parse_character("11:5:chi(2)=z");
  const std::string a = dump(to_json(LSeries(testing::curve("544b1")).algebraic_twisted(chi)));
  const std::string b = dump(to_json(LSeries(testing::curve("544b1")).algebraic_twisted(chi)));
  CHECK(a == b);
  CHECK(number(0.1 + 0.2).dump() == "0.3");
  CHECK(number(-0.0).dump() == "0.0");
  const Json e = error_json(Error(ErrorKind::UnknownLabel, "label not in dataset: x"));
  CHECK(e["kind"] == "UnknownLabel");
}
