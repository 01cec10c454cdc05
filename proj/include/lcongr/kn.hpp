#pragma once

// Kisilevsky--Nam normalization of cubic twisted L-values: L+ in the real
// subfield, the empirical gcd of its norms and the residues of L~+.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcongr/cyclotomic.hpp"
#include "lcongr/dirichlet.hpp"
#include "lcongr/lseries.hpp"
#include "lcongr/matgrp.hpp"

namespace lcongr {

// L(E, chi) if chi(N) = 1, else L(E, chi) (1 + conj chi(N)). Throws NotReal
// unless the result is fixed by complex conjugation.
CycNumber l_plus(const LSeries& series, const DirichletCharacter& chi);

// Number of connected components of E(R): 2 if the discriminant is positive.
int real_components(const CurveData& curve);

// Norms are taken of c L+ with c the number of real components, i.e. with the
// period of the identity component in place of the full real period.
struct GcdEstimate {
  std::string label;
  std::int64_t q = 3;
  std::int64_t gcd = 0;
  int components = 1;
  // (p, |Nm+(L+)|) for each sampled conductor, zeros included.
  std::vector<std::pair<std::int64_t, BigInt>> sample;
  std::int64_t nonzero = 0;
  bool stable = false;  // unchanged over the last 10 nonzero values
  bool empirical = true;
};

// Conductors default to the first `count` primes p = 1 mod q, p not dividing
// N, with nonvanishing L+; chi = prime(p, q, 1). Throws AllZero if every
// sampled value vanishes.
GcdEstimate estimate_gcd(const LSeries& series, std::int64_t q = 3, std::int64_t count = 20,
                         const std::vector<std::int64_t>& conductors = {});

// Nm+(c L+)/gcd mod 3, with c and gcd as in GcdEstimate. Throws GcdDivisible
// if 3 | gcd, HypothesisFailed if 3 | c0, NotIntegral if gcd does not divide
// the norm.
std::int64_t l_tilde_residue(const LSeries& series, const DirichletCharacter& chi, std::int64_t gcd);

// Residue from the main congruence with the actual chi(N):
// (chi(N) = 1 ? 2 : 1) #E(F_p) c L(E) gcd mod 3.
std::int64_t congruence_residue(const LSeries& series, const DirichletCharacter& chi, std::int64_t gcd);

struct KNHypothesis {
  bool no_3_isogeny = false;
  std::optional<int> discriminant_power;  // n with Delta = +-N^n
  bool certified = false;                 // both hold and 3 does not divide n
};
KNHypothesis kn_hypothesis(const CurveData& curve);

struct ResiduePrediction {
  std::int64_t p = 0;
  std::int64_t points = 0;
  bool split_in_K = false;
  int case_index = 0;  // 0: #E = 0, 1: #E = 1 and split, 2: otherwise
  std::int64_t residue = 0;
  bool certified = false;  // false means the hypotheses are unverified
};

// Three-case prediction from #E(F_p) mod 3 and the splitting of p in the
// 3-division field.
ResiduePrediction predicted_residue(const CurveData& curve, std::int64_t p);

struct KNRecord {
  std::string label, character;
  std::int64_t p = 0;
  CycNumber chi_n;
  CycNumber lvalue, lplus;
  BigInt norm_plus;
  std::int64_t observed_residue = 0;
  std::int64_t congruence_residue = 0;
  ResiduePrediction prediction;
  bool match = false;  // observed == predicted
};

// Full L-value path for one conductor, checked against predicted_residue.
KNRecord kn_record(const LSeries& series, std::int64_t p, std::int64_t gcd);

struct DeltaPrime {
  std::string label;
  std::int64_t limit = 0;
  std::vector<std::int64_t> counts;
  std::int64_t eligible = 0;
  DensityProfile empirical;
  DensityProfile expected;  // (9/24, 15/24, 1/24)
  double max_deviation = 0;
  // Same comparison against the trace count in SL_2(F_3).
  DensityProfile sl2_count;
  double sl2_deviation = 0;
  bool certified = false;
};

DensityProfile delta_prime_expected();
// Proportions of SL_2(F_3) by the three cases: trace 2, trace 1 other than
// -1 together with trace 0, and -1.
DensityProfile delta_prime_sl2();
// Tally of predicted residues over eligible primes p < limit.
DeltaPrime delta_prime(const CurveData& curve, std::int64_t limit, unsigned workers = 0);

}  // namespace lcongr
