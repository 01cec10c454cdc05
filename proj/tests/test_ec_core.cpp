#include <doctest.h>

#include <cmath>

#include "lcongr/ec_core.hpp"
#include "lcongr/errors.hpp"
#include "support.hpp"

using namespace lcongr;

namespace {

// Affine points by brute force plus the point at infinity.
std::int64_t naive_count(const CurveData& E, std::int64_t p) {
  const auto& [a1, a2, a3, a4, a6] = E.ainvs;
  std::int64_t n = 1;
  for (std::int64_t x = 0; x < p; ++x) {
    for (std::int64_t y = 0; y < p; ++y) {
      const std::int64_t lhs = mod(y * y + a1 * x * y + a3 * y, p);
      const std::int64_t rhs = mod(mod(x * x % p * x, p) + mod(a2, p) * x % p * x + mod(a4, p) * x + a6, p);
      n += lhs == rhs;
    }
  }
  return n;
}

using Q = boost::rational<std::int64_t>;

// x(2P) from the tangent construction on the general Weierstrass model.
Q double_x(const CurveData& E, Q x, Q y) {
  const auto& [a1, a2, a3, a4, a6] = E.ainvs;
  const Q lambda = (3 * x * x + 2 * a2 * x + a4 - a1 * y) / (2 * y + a1 * x + a3);
  return lambda * lambda + a1 * lambda - a2 - 2 * x;
}

BigInt eval(const std::vector<BigInt>& poly, std::int64_t x) {
  BigInt acc = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

TEST_CASE("discriminant of 11a1 and conductor divisibility") {
  CHECK(discriminant(testing::curve("11a1")) == -161051);
  for (const CurveData& E : testing::corpus().curves()) {
    const BigInt d = discriminant(E);
    CHECK(d != 0);
    for (std::int64_t p : prime_factors(E.conductor)) CHECK(d % p == 0);
  }
}

TEST_CASE("point counts agree with brute force for p <= 101") {
  for (const CurveData& E : testing::corpus().curves()) {
    const BigInt d = discriminant(E);
    for (std::int64_t p : primes_below(102)) {
      if (p == 2 || d % p == 0) continue;
      CAPTURE(E.label);
      CAPTURE(p);
      CHECK(count_points(E, p) == naive_count(E, p));
    }
  }
}

TEST_CASE("Hasse bound for good odd p <= 1000") {
  for (const CurveData& E : testing::corpus().curves()) {
    const BigInt d = discriminant(E);
    for (std::int64_t p : primes_below(1000)) {
      if (p == 2 || d % p == 0) continue;
      const double a = static_cast<double>(ap(E, p));
      CHECK(std::abs(a) <= 2 * std::sqrt(static_cast<double>(p)));
    }
  }
}

TEST_CASE("a_n table is multiplicative on coprime indices") {
  for (const char* label : {"11a1", "37a1", "50b1", "1356d1"}) {
    const CoefficientTable t = an_table(testing::curve(label), 600);
    CHECK(t.at(1) == 1);
    for (std::int64_t m = 2; m <= 24; ++m) {
      for (std::int64_t n = 2; m * n <= 600; ++n) {
        if (gcd(m, n) == 1) CHECK(t.at(m * n) == t.at(m) * t.at(n));
      }
    }
  }
}

TEST_CASE("a_p at bad primes follows the reduction type") {
  // Multiplicative reduction gives +-1, additive reduction 0.
  for (const char* label : {"11a1", "14a1", "37a1", "50b1"}) {
    const CurveData& E = testing::curve(label);
    for (std::int64_t p : prime_factors(E.conductor)) {
      const std::int64_t a = ap(E, p);
      CHECK(std::abs(a) <= 1);
      if (E.conductor % (p * p) != 0) CHECK(std::abs(a) == 1);
      else CHECK(a == 0);
    }
  }
}

TEST_CASE("torsion of 11a1 divides every #E(F_p)") {
  const CurveData& E = testing::curve("11a1");
  CHECK(torsion_order(E) == 5);
  for (std::int64_t p : primes_below(1000)) {
    if (p == 2 || p == 11) continue;
    CHECK(count_points(E, p) % 5 == 0);
  }
  CHECK(torsion_order(testing::curve("14a1")) == 6);
  CHECK(torsion_bound(testing::curve("14a1")) % 6 == 0);
}

TEST_CASE("3-division polynomial from the b-invariants") {
  const CurveData& E = testing::curve("11a1");
  const auto [a1, a2, a3, a4, a6] = E.ainvs;
  const std::int64_t b2 = a1 * a1 + 4 * a2, b4 = 2 * a4 + a1 * a3, b6 = a3 * a3 + 4 * a6;
  const std::int64_t b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  const auto psi = three_division_poly(E);
  REQUIRE(psi.size() == 5);
  CHECK(psi[4] == 3);
  CHECK(psi[3] == b2);
  CHECK(psi[2] == 3 * b4);
  CHECK(psi[1] == 3 * b6);
  CHECK(psi[0] == b8);
  CHECK(psi[1] == -237);
  CHECK(psi[0] == -21);
}

TEST_CASE("3-division polynomial vanishes at rational 3-torsion points") {
  int found = 0;
  for (const char* label : {"14a1", "19a1", "20a1", "27a1", "54b1"}) {
    const CurveData& E = testing::curve(label);
    const auto& [a1, a2, a3, a4, a6] = E.ainvs;
    const auto psi = three_division_poly(E);
    for (std::int64_t x = -60; x <= 60; ++x) {
      for (std::int64_t y = -400; y <= 400; ++y) {
        if (y * y + a1 * x * y + a3 * y != x * x * x + a2 * x * x + a4 * x + a6) continue;
        if (2 * y + a1 * x + a3 == 0) continue;
        if (double_x(E, Q(x), Q(y)) != Q(x)) continue;
        CAPTURE(label);
        CHECK(eval(psi, x) == 0);
        ++found;
      }
    }
  }
  CHECK(found > 0);
}

TEST_CASE("splitting in the 3-division field of 11a1") {
  const CurveData& E = testing::curve("11a1");
  CHECK(splits_completely_in_K3(E, 337));
  CHECK_FALSE(splits_completely_in_K3(E, 19));
  CHECK(splits_completely_in_K3(E, 193));
  CHECK(count_points(E, 337) == 360);
  CHECK(count_points(E, 193) == 190);
  CHECK_THROWS_AS(splits_completely_in_K3(E, 11), Error);
}

TEST_CASE("discriminant as a power of the conductor") {
  CHECK(discriminant_conductor_power(testing::curve("11a1")) == 5);
  CHECK(discriminant_conductor_power(testing::curve("15a1")) == 4);
  CHECK(discriminant_conductor_power(testing::curve("17a1")) == 4);
  CHECK_FALSE(discriminant_conductor_power(testing::curve("14a1")).has_value());
}
