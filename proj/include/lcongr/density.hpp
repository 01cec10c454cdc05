#pragma once

// Residual densities of twisted L-values over prime conductors p = 1 mod q,
// tallied from point counts and compared with Galois-image predictions.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcongr/lseries.hpp"
#include "lcongr/matgrp.hpp"

namespace lcongr {

struct SweepResult {
  std::string label;
  std::int64_t q = 0;
  std::int64_t limit = 0;  // primes p < limit
  std::vector<std::int64_t> counts;
  std::int64_t eligible = 0;
  DensityProfile empirical;
  std::optional<DensityProfile> predicted;
  double max_deviation = 0;  // set when a prediction is attached
  // (p, residue) per eligible prime, in increasing p; filled on request.
  std::vector<std::pair<std::int64_t, std::int64_t>> residues;
};

// Residue of L(E, chi) mod (1 - zeta_q) for any chi of conductor p, from
// #E(F_p) alone: -L(E) #E(F_p) when ord_q L(E) = 0, -(q L(E)) (#E(F_p)/q)
// when ord_q L(E) = -1 (Mismatch if q does not divide #E(F_p)), 0 when
// ord_q L(E) > 0.
std::int64_t sweep_residue(const Rational& lratio, std::int64_t points, std::int64_t q);

// Primes 2 < p < limit with p = 1 mod q and p not dividing N.
std::vector<std::int64_t> eligible_primes(std::int64_t conductor, std::int64_t q, std::int64_t limit);

// Throws HypothesisFailed if q divides c0, BoundViolated if ord_q L(E) < -1.
SweepResult sweep(const LSeries& series, std::int64_t q, std::int64_t limit, bool keep_residues = false,
                  unsigned workers = 0);
void attach_prediction(SweepResult& result, const DensityProfile& predicted);

struct SpotCheck {
  std::int64_t p = 0;
  std::string character;
  std::int64_t sweep = 0;     // residue from #E(F_p)
  std::int64_t observed = 0;  // reduce_mod_lambda of the full L(E, chi)
  bool match = false;
};

// `count` eligible p < min(limit, 5000) drawn with mt19937_64(seed), each with a random
// character of conductor p and order q, compared against sweep_residue.
std::vector<SpotCheck> spot_check(const LSeries& series, std::int64_t q, std::int64_t limit, std::int64_t count,
                                  std::uint64_t seed);

struct Prediction {
  // "valuation", "torsion", "table1" or "table2".
  std::string route;
  std::string image_label;
  DensityProfile profile;
  std::array<Rational, 3> triple{};  // (delta(0), delta(1), delta(2))
};

// The twelve possible triples (delta(0), delta(1), delta(2)) for q = 3.
const std::vector<std::array<Rational, 3>>& density_triples();

// q = 3 dispatch on ord_3 L(E), the torsion order and the 3-adic image.
// Throws MissingImageData when the needed table row is unknown and
// Mismatch if the result is not one of the twelve triples.
Prediction predict(const LSeries& series, const GaloisTables& tables);
// Same, with the image given explicitly by a table row.
Prediction predict_with_row(const Rational& lratio, const TableRow& row, int which);

}  // namespace lcongr
