#pragma once

// Valuation bounds for L(E)/Omega and the norm, sign and unit checks for
// twisted values.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lcongr/cyclotomic.hpp"
#include "lcongr/dataset.hpp"
#include "lcongr/dirichlet.hpp"
#include "lcongr/lseries.hpp"

namespace lcongr {

struct ValuationReport {
  std::string label;
  std::int64_t q = 0;
  int ord = 0;  // ord_q(c0 * L(E))
  std::optional<bool> has_q_isogeny;
  int lower_bound = -1;
  bool bound_satisfied = false;
};

// Throws BoundViolated when ord_q(c0 L(E)) is below the bound.
ValuationReport valuation_check(const LSeries& series, std::int64_t q);

struct UnitReport {
  std::string label, character;
  std::int64_t q = 0, p = 0;
  CycNumber lvalue;
  CycNumber zeta;  // chi(N)^((q - 1)/2)
  bool real_part_check = false;
  BigRational norm, norm_plus;
  std::optional<Rational> expected_quotient;
  std::optional<bool> quotient_match;
  std::int64_t points = 0;  // #E(F_p)
  std::int64_t predicted_residue = 0;
  std::int64_t observed_residue = 0;
  // Cubic case: the sign u with L(E, chi) chi(N) = u |L(E, chi) chi(N)|.
  std::optional<int> predicted_sign, observed_sign;
  bool sign_from_norm_only = false;
  bool match = false;
};

UnitReport norm_identity_check(const LSeries& series, const DirichletCharacter& chi,
                               std::optional<Rational> expected_quotient = std::nullopt);
// Throws HypothesisFailed if 3 divides c0, the numerator of L(E) or #E(F_p).
UnitReport sign_determination(const LSeries& series, const DirichletCharacter& chi);
// Throws NotUnit if the norm is not +-1.
UnitReport unit_congruence_check(const LSeries& series, const DirichletCharacter& chi);

// One row of the worked example tables: a printed value and point count
// compared with the computed ones, plus the matching unit/sign/norm report.
struct Section5Row {
  std::string table;  // "cubic", "quintic", "explicit" or "quotient"
  std::string label, character;
  std::optional<CycNumber> expected;
  CycNumber computed;
  std::optional<std::int64_t> expected_points;
  std::int64_t points = 0;
  std::optional<Rational> expected_quotient;
  std::optional<std::int64_t> expected_residue;
  bool value_match = true, points_match = true;
  UnitReport report;
  std::string error;
  bool ok() const { return error.empty() && value_match && points_match && report.match; }
};

std::filesystem::path default_section5_path();
// Runs every row of the fixture file; rows are evaluated in parallel.
std::vector<Section5Row> run_section5(const Dataset& data, const std::filesystem::path& fixture,
                                      TableProvider provider = nullptr);

}  // namespace lcongr
