#pragma once

// Subgroups of GL_2(Z/nZ) for prime powers n, generated by explicit matrices.

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcongr/arith.hpp"

namespace lcongr {

struct Mat2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  std::int64_t det(std::int64_t n) const { return mod(a * d - b * c, n); }
  std::int64_t trace(std::int64_t n) const { return mod(a + d, n); }
  Mat2 mul(const Mat2& o, std::int64_t n) const;
  Mat2 reduced(std::int64_t n) const { return {mod(a, n), mod(b, n), mod(c, n), mod(d, n)}; }
  // Throws NotInvertible unless det is a unit mod n.
  Mat2 inverse(std::int64_t n) const;

  auto operator<=>(const Mat2&) const = default;
  std::string to_string() const;
};

struct SubgroupCensus {
  std::int64_t modulus = 1;
  std::vector<Mat2> generators;
  std::vector<Mat2> elements;
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> census;  // (trace, det) -> count

  std::int64_t size() const { return static_cast<std::int64_t>(elements.size()); }
  bool contains(const Mat2& m) const;
};

// Exact distribution over F_q; values[lambda] for lambda = 0..q-1.
struct DensityProfile {
  std::int64_t q = 0;
  std::vector<Rational> values;

  Rational at(std::int64_t lambda) const { return values.at(static_cast<std::size_t>(mod(lambda, q))); }
  Rational total() const;
  bool operator==(const DensityProfile&) const = default;
};

// Prime p with modulus = p^k; throws InvalidArgument otherwise.
std::int64_t prime_of_power(std::int64_t modulus);
std::int64_t gl2_order(std::int64_t modulus);

// Breadth-first closure; elements appear in discovery order starting from the identity.
SubgroupCensus generate(const std::vector<Mat2>& generators, std::int64_t modulus);
// Elements with det = 1 mod q.
SubgroupCensus det1_slice(const SubgroupCensus& g);
// Full preimage under GL_2(Z/target) -> GL_2(Z/modulus).
SubgroupCensus lift_to_modulus(const SubgroupCensus& g, std::int64_t target);
// Image under reduction to a divisor of the modulus.
SubgroupCensus reduce_to_modulus(const SubgroupCensus& g, std::int64_t target);
// g at modulus q^k brought to q^m by lifting or reducing.
SubgroupCensus at_modulus(const SubgroupCensus& g, std::int64_t target);

// delta(lambda) = #{M in g : 1 + det M - tr M = -lambda L^-1 mod q^m} / #g where
// L is the algebraic L-value and q^m the modulus, which must equal q^(1 - ord_q L).
// If ord_q L > 0 the profile is concentrated at 0. Throws NotUnit when the
// valuation does not fit the modulus.
DensityProfile density_profile(const SubgroupCensus& g, const Rational& lvalue);
// Surjective mod-q image, via Legendre symbols; lvalue must be a q-adic unit.
DensityProfile closed_form_density(std::int64_t q, const Rational& lvalue);

// Ordered triple (delta(0), delta(-b), delta(b)) with b the residue of q^(-ord) L.
std::array<Rational, 3> ordered_triple(const DensityProfile& p, std::int64_t b);

struct ConjugacyClass {
  Mat2 representative;
  std::int64_t order = 1;
  std::int64_t cardinality = 1;
  std::int64_t trace = 2;
  // "central", "unipotent", "split", "nonsplit".
  std::string family;
};

struct ConjugacyReport {
  std::int64_t q = 0;
  std::vector<ConjugacyClass> classes;
  // Number of classes with trace 2, trace q - 2, split and nonsplit semisimple.
  std::int64_t trace2 = 0, trace_minus2 = 0, split = 0, nonsplit = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Brute-force orbit partition of SL_2(F_q), checked against the class formulas.
ConjugacyReport sl2_conjugacy_table(std::int64_t q);

struct TableRow {
  std::string label;
  std::string mod3_label;  // Table 2 only
  std::int64_t level = 3;
  std::vector<Mat2> generators;
  // Table 1: the listed G_{E,3} elements, or empty with g_is_sl for the SL(3) row.
  std::vector<Mat2> expected_g;
  bool g_is_sl = false;
  std::optional<std::int64_t> expected_g_size;
  std::optional<Mat2> expected_m;  // Table 2; nullopt for the N/A rows
  std::array<Rational, 3> expected_delta{};
  std::string example_b1, example_b2;
};

struct GaloisTables {
  std::vector<TableRow> table1, table2;
  const TableRow* find(const std::string& label) const;
};

GaloisTables load_galois_tables(const std::filesystem::path& path);

struct RowCheck {
  std::string label;
  std::int64_t image_size = 0, expected_image_size = 0;
  std::int64_t g_size = 0;
  std::array<Rational, 3> delta{};
  std::optional<Mat2> found_m;  // Table 2: a matrix with 1 + det - tr = 3 mod 9
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// G_{E,3} (Table 1) or G_{E,9} (Table 2) of a row.
SubgroupCensus row_slice(const TableRow& row, int which);
RowCheck verify_row(const TableRow& row, int which);
std::vector<RowCheck> verify_table(const GaloisTables& tables, int which);

}  // namespace lcongr
