#include "lcongr/dirichlet.hpp"

#include <numbers>
#include <regex>

#include "lcongr/errors.hpp"

namespace lcongr {

namespace {

int jacobi(std::int64_t a, std::int64_t n) {
  a = mod(a, n);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

bool is_fundamental_discriminant(std::int64_t d) {
  if (d == 0 || d == 1) return false;
  auto squarefree = [](std::int64_t m) {
    m = m < 0 ? -m : m;
    for (std::int64_t p = 2; p * p <= m; ++p) {
      if (m % (p * p) == 0) return false;
    }
    return true;
  };
  if (mod(d, 4) == 1) return squarefree(d);
  if (mod(d, 4) != 0) return false;
  const std::int64_t m = d / 4;
  return (mod(m, 4) == 2 || mod(m, 4) == 3) && squarefree(m);
}

}  // namespace

int kronecker(std::int64_t d, std::int64_t n) {
  if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (d < 0) result = -result;
  }
  while (n % 2 == 0) {
    n /= 2;
    if (d % 2 == 0) return 0;
    const std::int64_t r = mod(d, 8);
    if (r == 3 || r == 5) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(d, n);
}

DirichletCharacter DirichletCharacter::prime(std::int64_t p, std::int64_t q, std::int64_t k) {
  if (!is_prime(p) || p == 2 || !is_prime(q) || (p - 1) % q != 0) {
    throw Error(ErrorKind::NoSuchCharacter,
                "no character of conductor " + std::to_string(p) + " and order " + std::to_string(q));
  }
  if (mod(k, q) == 0) throw Error(ErrorKind::NoSuchCharacter, "twist exponent must be a unit mod q");
  DirichletCharacter chi;
  chi.conductor_ = p;
  chi.order_ = q;
  chi.generator_ = primitive_root(p);
  chi.twist_ = mod(k, q);
  chi.exponents_.assign(static_cast<std::size_t>(p), -1);
  std::int64_t x = 1;
  for (std::int64_t i = 0; i < p - 1; ++i) {
    chi.exponents_[x] = static_cast<int>(mod(chi.twist_ * i, q));
    x = x * chi.generator_ % p;
  }
  chi.id_ = std::to_string(p) + ":" + std::to_string(q) + ":chi(" + std::to_string(chi.generator_) +
            ")=z" + std::to_string(chi.twist_);
  return chi;
}

DirichletCharacter DirichletCharacter::from_value(std::int64_t p, std::int64_t q, std::int64_t a,
                                                  std::int64_t e) {
  for (std::int64_t k = 1; k < q; ++k) {
    DirichletCharacter chi = prime(p, q, k);
    if (chi.exponent(a) == mod(e, q)) return chi;
  }
  throw Error(ErrorKind::NoSuchCharacter, "no character of conductor " + std::to_string(p) + " and order " +
                                              std::to_string(q) + " with chi(" + std::to_string(a) +
                                              ") = z^" + std::to_string(e));
}

DirichletCharacter DirichletCharacter::quadratic(std::int64_t d) {
  if (!is_fundamental_discriminant(d)) {
    throw Error(ErrorKind::NoSuchCharacter, std::to_string(d) + " is not a fundamental discriminant");
  }
  DirichletCharacter chi;
  chi.conductor_ = d < 0 ? -d : d;
  chi.order_ = 2;
  chi.twist_ = d;
  chi.exponents_.assign(static_cast<std::size_t>(chi.conductor_), -1);
  for (std::int64_t a = 0; a < chi.conductor_; ++a) {
    const int s = kronecker(d, a);
    if (s != 0) chi.exponents_[a] = s == 1 ? 0 : 1;
  }
  chi.id_ = std::to_string(d) + ":2";
  return chi;
}

bool DirichletCharacter::is_even() const { return exponent(-1) == 0; }

std::optional<std::int64_t> DirichletCharacter::exponent(std::int64_t a) const {
  const int e = exponents_[mod(a, conductor_)];
  if (e < 0) return std::nullopt;
  return e;
}

CycNumber DirichletCharacter::evaluate(std::int64_t a) const {
  const auto e = exponent(a);
  if (!e) return CycNumber(order_);
  return CycNumber::zeta(order_, *e);
}

std::complex<double> DirichletCharacter::value(std::int64_t a) const {
  const auto e = exponent(a);
  if (!e) return 0.0;
  return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(*e) / order_);
}

DirichletCharacter DirichletCharacter::conjugate(std::int64_t b) const {
  if (mod(b, order_) == 0) throw Error(ErrorKind::InvalidArgument, "conjugation index not a unit");
  if (order_ == 2) return *this;
  return prime(conductor_, order_, twist_ * b);
}

std::complex<double> DirichletCharacter::gauss_sum() const {
  std::complex<double> tau = 0;
  for (std::int64_t a = 1; a < conductor_; ++a) {
    tau += value(a) * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(a) / conductor_);
  }
  return tau;
}

std::vector<DirichletCharacter> characters(std::int64_t p, std::int64_t q) {
  std::vector<DirichletCharacter> out;
  for (std::int64_t k = 1; k < q; ++k) out.push_back(DirichletCharacter::prime(p, q, k));
  return out;
}

DirichletCharacter parse_character(std::string_view text) {
  static const std::regex value_form(R"((\d+):(\d+):chi\((-?\d+)\)=z(?:\^?(-?\d+))?)");
  static const std::regex exponent_form(R"((\d+):(\d+):k=(-?\d+))");
  static const std::regex quadratic_form(R"((-?\d+):2)");
  const std::string s(text);
  std::smatch m;
  try {
    if (std::regex_match(s, m, value_form)) {
      return DirichletCharacter::from_value(std::stoll(m[1]), std::stoll(m[2]), std::stoll(m[3]),
                                            m[4].matched ? std::stoll(m[4]) : 1);
    }
    if (std::regex_match(s, m, exponent_form)) {
      return DirichletCharacter::prime(std::stoll(m[1]), std::stoll(m[2]), std::stoll(m[3]));
    }
    if (std::regex_match(s, m, quadratic_form)) return DirichletCharacter::quadratic(std::stoll(m[1]));
  } catch (const std::out_of_range&) {
  }
  throw Error(ErrorKind::ParseError, "bad character '" + s + "'");
}

}  // namespace lcongr
