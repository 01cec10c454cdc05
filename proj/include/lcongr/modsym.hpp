#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "lcongr/cyclotomic.hpp"
#include "lcongr/dirichlet.hpp"
#include "lcongr/lseries.hpp"

namespace lcongr {

using IntMatrix = std::array<std::int64_t, 4>;  // a, b, c, d

// delta = [[a', a], [c', m]] in Gamma_0(N) with delta(0) = a/m.
IntMatrix gamma_for_cusp(std::int64_t a, std::int64_t m, std::int64_t N);

struct SymbolValue {
  std::string label;
  std::int64_t a = 0, m = 1;
  std::complex<double> raw;
  double normalized = 0;  // (c0 / Omega) * 2 Re(raw)
  std::int64_t plus = 0;
  double residual = 0;
};

struct HeckeReport {
  std::int64_t n = 1;
  std::int64_t an = 1, sigma1 = 1, sigma0_even = 0, points_f2 = 0;
  Rational lhs;
  bool lhs_integral = true;
  std::int64_t rhs = 0;        // sum of rounded symbols
  double rhs_numeric = 0;      // sum of unrounded symbols
  double max_residual = 0;
  bool holds = false;
};

struct CongruenceReport {
  std::string label, character;
  std::int64_t q = 0, n = 0;
  CycNumber lvalue;            // c0 * L(E, chi)
  std::int64_t lhs_residue = 0;
  std::int64_t rhs_residue = 0;
  Rational rhs_value;          // before reduction
  std::int64_t epsilon = 0;
  bool match = false;
  // q = 3 only, recorded as data: the trace of c0 * L(E, chi) and minus the
  // right side, both mod 9. They agree mod 3 but need not agree mod 9.
  std::optional<std::int64_t> lhs_trace_mod9, rhs_negated_mod9;
};

struct ParityReport {
  std::string label, kind, character;
  Rational lhs_value, rhs_value;
  std::int64_t lhs_mod2 = 0, rhs_mod2 = 0, epsilon_mod2 = 0;
  bool match = false;
};

class ModularSymbols {
 public:
  explicit ModularSymbols(const LSeries& series);

  // mu_E(a/m); requires gcd(m, N) = 1.
  std::complex<double> mu(std::int64_t a, std::int64_t m) const;
  // mu_E(a/m) for any cusp with gcd(m, N) = 1 or N | m; the second case runs
  // through the cusp at infinity and is used only by the negative control.
  std::complex<double> mu_any(std::int64_t a, std::int64_t m) const;

  SymbolValue symbol(std::int64_t a, std::int64_t m, bool any_cusp = false) const;
  // Rounded symbol; throws NotIntegral when the residual is >= 1e-4.
  std::int64_t mu_plus(std::int64_t a, std::int64_t m) const;

  // Pass allow_shared_factor to evaluate the identity at n with gcd(n, N) > 1.
  HeckeReport hecke_identity(std::int64_t n, bool allow_shared_factor = false) const;
  CycNumber birch_sum(const DirichletCharacter& chi) const;
  std::int64_t epsilon_term(std::int64_t n) const;
  CongruenceReport congruence_check(const DirichletCharacter& chi) const;
  // kind "p1p2" (quadratic character of conductor p1 p2) or "eight".
  ParityReport quadratic_parity_check(const std::string& kind, std::int64_t p1 = 0, std::int64_t p2 = 0) const;

  const LSeries& series() const { return series_; }

 private:
  std::complex<double> antiderivative_difference(std::complex<double> z0, std::complex<double> z1) const;
  Rational c0_lratio() const;

  const LSeries& series_;
};

}  // namespace lcongr
