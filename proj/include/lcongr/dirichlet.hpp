#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lcongr/cyclotomic.hpp"

namespace lcongr {

// Primitive Dirichlet character of prime order q, stored as a table of
// exponents: chi(a) = zeta_q^e(a), with e(a) = -1 when gcd(a, conductor) > 1.
class DirichletCharacter {
 public:
  // chi(g) = zeta_q^k on the least primitive root g of the prime p.
  static DirichletCharacter prime(std::int64_t p, std::int64_t q, std::int64_t k);
  // The character of conductor p and order q with chi(a) = zeta_q^e.
  static DirichletCharacter from_value(std::int64_t p, std::int64_t q, std::int64_t a, std::int64_t e);
  // Kronecker symbol (d / .) for a fundamental discriminant d.
  static DirichletCharacter quadratic(std::int64_t d);

  std::int64_t conductor() const { return conductor_; }
  std::int64_t order() const { return order_; }
  const std::string& id() const { return id_; }
  bool is_even() const;

  std::optional<std::int64_t> exponent(std::int64_t a) const;
  CycNumber evaluate(std::int64_t a) const;
  std::complex<double> value(std::int64_t a) const;

  // sigma_b o chi.
  DirichletCharacter conjugate(std::int64_t b) const;
  std::complex<double> gauss_sum() const;

 private:
  DirichletCharacter() = default;
  std::int64_t conductor_ = 1;
  std::int64_t order_ = 2;
  std::int64_t generator_ = 0;
  std::int64_t twist_ = 0;  // k for prime conductor, d for quadratic
  std::vector<int> exponents_;
  std::string id_;
};

// All q - 1 characters of conductor p and order q.
std::vector<DirichletCharacter> characters(std::int64_t p, std::int64_t q);

// "7:3:chi(3)=z2" (also "z^2", and "z" for z^1), "7:3:k=2", or "21:2" for a quadratic
// character given by its fundamental discriminant.
DirichletCharacter parse_character(std::string_view text);

int kronecker(std::int64_t d, std::int64_t n);

}  // namespace lcongr
