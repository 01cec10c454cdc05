#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcongr/arith.hpp"

namespace lcongr {

// Largest prime accepted by the O(p) point counter.
inline constexpr std::int64_t kMaxCountPrime = 10'000'000;

// An elliptic curve over Q given by an integral minimal Weierstrass model,
// together with the per-curve data the dataset supplies.
struct CurveData {
  std::string label;
  std::array<std::int64_t, 5> ainvs{};  // a1, a2, a3, a4, a6
  std::int64_t conductor = 1;
  std::optional<int> root_number;
  std::int64_t manin_c0 = 1;
  std::optional<Rational> lratio_hint;

  // Primes q for which the curve is known to have no rational q-isogeny.
  std::vector<std::int64_t> no_isogeny_primes;
  // Label of the mod-3 image (Table 1 rows) or of the 3-adic image (Table 2 rows).
  std::string galois_image_3;
  // BSD(E/K)/BSD(E) quotient quoted for a twist, when the dataset records it.
  std::optional<Rational> bsd_quotient;

  bool has_no_isogeny(std::int64_t q) const;
};

struct Invariants {
  BigInt b2, b4, b6, b8, c4, c6, discriminant;
};

Invariants invariants(const CurveData& curve);
BigInt discriminant(const CurveData& curve);

// a_1 .. a_nmax of the curve's L-series; values[n - 1] holds a_n.
struct CoefficientTable {
  std::string label;
  std::vector<std::int64_t> values;

  std::int64_t nmax() const { return static_cast<std::int64_t>(values.size()); }
  std::int64_t at(std::int64_t n) const { return values.at(static_cast<std::size_t>(n - 1)); }
};

// #E(F_p) for an odd prime p of good reduction.
std::int64_t count_points(const CurveData& curve, std::int64_t p);

// Number of projective F_p-points of the reduction of the model, singular
// point included. Valid at every prime, good or bad.
std::int64_t count_reduction_points(const CurveData& curve, std::int64_t p);

// Naive double loop over F_p^2; test oracle and the p = 2 path.
std::int64_t count_points_naive(const CurveData& curve, std::int64_t p);

std::int64_t ap(const CurveData& curve, std::int64_t p);

CoefficientTable an_table(const CurveData& curve, std::int64_t nmax);

// Rational torsion order, confirmed by an explicit Lutz--Nagell search.
std::int64_t torsion_order(const CurveData& curve);

// Upper bound for the torsion order: gcd of #E(F_p) over good primes p > 3.
std::int64_t torsion_bound(const CurveData& curve, int prime_count = 20);

// Coefficients of the 3-division polynomial, constant term first.
std::vector<BigInt> three_division_poly(const CurveData& curve);

bool splits_completely_in_K3(const CurveData& curve, std::int64_t p);

// n such that the discriminant equals +-N^n, if any.
std::optional<int> discriminant_conductor_power(const CurveData& curve);

}  // namespace lcongr
