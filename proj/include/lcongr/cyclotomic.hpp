#pragma once

// Exact arithmetic in Q(zeta_q) for a prime q.

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lcongr/arith.hpp"

namespace lcongr {

BigRational to_big(const Rational& x);
// Throws Overflow if x does not fit in 64-bit numerator and denominator.
Rational to_small(const BigRational& x);

// Element of Q(zeta_q) in the power basis 1, z, ..., z^(q-2).
class CycNumber {
 public:
  CycNumber() = default;
  explicit CycNumber(std::int64_t q);
  CycNumber(std::int64_t q, const BigRational& c);
  // Coefficients on 1, z, ..., z^(k); any length, reduced modulo z^q - 1 and Phi_q.
  static CycNumber from_powers(std::int64_t q, const std::vector<BigRational>& powers);
  static CycNumber zeta(std::int64_t q, std::int64_t k = 1);

  std::int64_t order() const { return q_; }
  const std::vector<BigRational>& coeffs() const { return c_; }
  bool is_integral() const;
  bool is_rational() const;
  bool is_zero() const;
  // Constant coefficient; throws NotReal unless the value is rational.
  BigRational rational_value() const;

  CycNumber operator+(const CycNumber& o) const;
  CycNumber operator-(const CycNumber& o) const;
  CycNumber operator*(const CycNumber& o) const;
  CycNumber operator-() const;
  CycNumber scaled(const BigRational& s) const;
  bool operator==(const CycNumber& o) const;
  bool operator!=(const CycNumber& o) const { return !(*this == o); }

  // sigma_a : z -> z^a.
  CycNumber conjugate(std::int64_t a) const;
  bool is_real() const { return conjugate(-1) == *this; }
  std::complex<double> embed(std::int64_t a = 1) const;

  BigRational norm() const;
  BigRational norm_plus() const;
  CycNumber inverse() const;
  CycNumber pow(std::int64_t e) const;

  // Image in F_q under z -> 1.
  std::int64_t reduce_mod_lambda() const;

  std::string to_string() const;

 private:
  void check_same(const CycNumber& o) const;
  std::int64_t q_ = 0;
  std::vector<BigRational> c_;
};

// Parses "a0+a1*z+...+ak*z^k" (any term order, rational coefficients).
CycNumber parse_cyc(std::int64_t q, std::string_view text);

// Recovers x from its embeddings values[a] = sigma_a(x), a = 1..q-1.
CycNumber recognize(std::int64_t q, const std::map<std::int64_t, std::complex<double>>& values,
                    double tol = 1e-6, std::int64_t max_denominator = 120);

}  // namespace lcongr
