#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "lcongr/cyclotomic.hpp"
#include "lcongr/dirichlet.hpp"
#include "lcongr/ec_core.hpp"

namespace lcongr {

struct LValueReport {
  std::string label;
  std::string character = "1";
  std::complex<double> analytic;
  double period = 0;
  CycNumber algebraic;
  std::int64_t terms = 0;
  double tail_bound = 0;
  // |L(t) - L(t')| of the functional-equation sum at two splitting points.
  double fe_residual = 0;
  // Level of the twisted form; differs from N * c^2 only on the clash path.
  std::int64_t twisted_level = 0;
  int twisted_sign = 0;
};

// Supplies a_n tables; lets callers route through a disk cache.
using TableProvider = std::function<CoefficientTable(const CurveData&, std::int64_t)>;

// Number of terms so that the Hasse-majorant tail of sum a_n/n x^n,
// x = exp(-2 pi / Q), stays below eps.
std::int64_t series_cutoff(double Q, double eps);

class LSeries {
 public:
  explicit LSeries(CurveData curve, TableProvider provider = nullptr);

  const CurveData& curve() const { return curve_; }
  // Shared a_n table holding at least nmax entries.
  std::shared_ptr<const CoefficientTable> table(std::int64_t nmax) const;

  double omega() const;
  int root_number() const;
  double l1() const;
  // L(E,1)/Omega recognized as a rational with denominator <= 120.
  Rational lratio() const;

  // L(E, chi, 1) for gcd(c, N) = 1.
  std::complex<double> twisted(const DirichletCharacter& chi, double* fe_residual = nullptr) const;
  // L(E, chi, 1) * c / (tau(chi) * Omega).
  std::complex<double> normalized(const DirichletCharacter& chi) const;
  LValueReport algebraic_twisted(const DirichletCharacter& chi) const;
  // Quadratic twist with gcd(c, N) > 1: the level and sign of the twisted
  // form are found by testing the functional equation.
  LValueReport algebraic_twisted_clash(const DirichletCharacter& chi) const;

 private:
  CurveData curve_;
  TableProvider provider_;
  mutable std::mutex mutex_;
  mutable std::shared_ptr<const CoefficientTable> table_;
  mutable std::optional<double> omega_;
  mutable std::optional<int> root_number_;
  mutable std::optional<double> l1_;
};

}  // namespace lcongr
