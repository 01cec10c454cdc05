#include <doctest.h>

#include <algorithm>

#include "lcongr/dataset.hpp"
#include "lcongr/density.hpp"
#include "lcongr/errors.hpp"
#include "support.hpp"

using namespace lcongr;

namespace {

const GaloisTables& tables() {
  static const GaloisTables t = load_galois_tables(default_data_dir() / "galois_images.json");
  return t;
}

using Triple = std::array<Rational, 3>;

}  // namespace

TEST_CASE("sweep residue rule") {
  CHECK(sweep_residue(Rational(1, 5), 10, 3) == mod(-2 * 10, 3));
  CHECK(sweep_residue(Rational(3), 11, 3) == 0);
  // ord_3 = -1: -(3 L) (#E / 3).
  CHECK(sweep_residue(Rational(1, 3), 6, 3) == mod(-1 * 2, 3));
  CHECK_THROWS_AS(sweep_residue(Rational(1, 3), 7, 3), Error);
}

TEST_CASE("eligible primes") {
  const auto ps = eligible_primes(11, 3, 100);
  CHECK(ps == std::vector<std::int64_t>{7, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97});
  const auto for14 = eligible_primes(14, 3, 100);
  CHECK(std::find(for14.begin(), for14.end(), 7) == for14.end());
}

TEST_CASE("sweep counts are consistent") {
  const SweepResult r = sweep(testing::series("11a1"), 3, 5000);
  std::int64_t total = 0;
  for (std::int64_t c : r.counts) total += c;
  CHECK(total == r.eligible);
  CHECK(r.empirical.total() == Rational(1));
  for (std::size_t i = 0; i < r.counts.size(); ++i) CHECK(r.empirical.values[i] == Rational(r.counts[i], r.eligible));
  CHECK_THROWS_AS(sweep(testing::series("27a3"), 3, 1000), Error);
  CHECK_THROWS_AS(sweep(testing::series("11a1"), 3, 20'000'000), Error);
}

TEST_CASE("sweep residues agree with full twisted L-values") {
  for (const char* label : {"11a1", "20a1", "14a1", "11a2"}) {
    for (const SpotCheck& c : spot_check(testing::series(label), 3, 50'000, 20, 20240601)) {
      CAPTURE(label);
      CAPTURE(c.p);
      CHECK(c.match);
    }
  }
  const auto a = spot_check(testing::series("11a1"), 3, 50'000, 5, 99);
  const auto b = spot_check(testing::series("11a1"), 3, 50'000, 5, 99);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].character == b[i].character);
}

TEST_CASE("predictions") {
  auto triple = [](const char* label) { return predict(testing::series(label), tables()).triple; };
  CHECK(triple("11a1") == Triple{Rational(3, 8), Rational(3, 8), Rational(1, 4)});
  CHECK(triple("20a1") == Triple{Rational(5, 9), Rational(2, 9), Rational(2, 9)});
  CHECK(triple("14a1") == Triple{Rational(1), Rational(0), Rational(0)});
  CHECK(triple("50b4") == Triple{Rational(1), Rational(0), Rational(0)});
  CHECK(triple("84a1") == Triple{Rational(1), Rational(0), Rational(0)});
  CHECK(predict(testing::series("84a1"), tables()).route == "torsion");
  CHECK(predict(testing::series("50b4"), tables()).route == "valuation");
}

TEST_CASE("every prediction is one of the twelve triples") {
  const auto& allowed = density_triples();
  CHECK(allowed.size() == 12);
  int predicted = 0;
  for (const CurveData& E : testing::corpus().curves()) {
    const LSeries& L = testing::series(E.label);
    if (L.root_number() == -1 || E.manin_c0 % 3 == 0) continue;
    try {
      const Prediction p = predict(L, tables());
      CHECK(std::find(allowed.begin(), allowed.end(), p.triple) != allowed.end());
      CHECK(p.profile.total() == Rational(1));
      ++predicted;
    } catch (const Error& e) {
      CAPTURE(E.label);
      CHECK(e.kind() == ErrorKind::MissingImageData);
    }
  }
  CHECK(predicted >= 10);
}

TEST_CASE("deviation shrinks as the sweep grows") {
  for (const char* label : {"11a1", "20a1"}) {
    const Prediction p = predict(testing::series(label), tables());
    SweepResult small = sweep(testing::series(label), 3, 5000);
    SweepResult large = sweep(testing::series(label), 3, 50'000);
    attach_prediction(small, p.profile);
    attach_prediction(large, p.profile);
    CAPTURE(label);
    CHECK(large.max_deviation < small.max_deviation);
    CHECK(large.max_deviation < 0.02);
  }
}
