#include "lcongr/cyclotomic.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "lcongr/errors.hpp"

namespace lcongr {

BigRational to_big(const Rational& x) {
  return BigRational(BigInt(x.numerator()), BigInt(x.denominator()));
}

Rational to_small(const BigRational& x) {
  const BigInt num = numerator(x), den = denominator(x);
  const BigInt limit = std::numeric_limits<std::int64_t>::max();
  if (abs(num) > limit || den > limit) {
    throw Error(ErrorKind::Overflow, "rational " + x.str() + " exceeds 64-bit range");
  }
  return Rational(num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>());
}

CycNumber::CycNumber(std::int64_t q) : q_(q), c_(static_cast<std::size_t>(q - 1)) {
  if (q < 2 || !is_prime(q)) throw Error(ErrorKind::InvalidArgument, "cyclotomic order must be prime");
}

CycNumber::CycNumber(std::int64_t q, const BigRational& c) : CycNumber(q) { c_[0] = c; }

CycNumber CycNumber::from_powers(std::int64_t q, const std::vector<BigRational>& powers) {
  std::vector<BigRational> full(static_cast<std::size_t>(q));
  for (std::size_t i = 0; i < powers.size(); ++i) full[i % q] += powers[i];
  CycNumber x(q);
  for (std::int64_t i = 0; i + 1 < q; ++i) x.c_[i] = full[i] - full[q - 1];
  return x;
}

CycNumber CycNumber::zeta(std::int64_t q, std::int64_t k) {
  std::vector<BigRational> powers(static_cast<std::size_t>(q));
  powers[mod(k, q)] = 1;
  return from_powers(q, powers);
}

bool CycNumber::is_integral() const {
  for (const auto& v : c_) {
    if (denominator(v) != 1) return false;
  }
  return true;
}

bool CycNumber::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

bool CycNumber::is_zero() const {
  for (const auto& v : c_) {
    if (v != 0) return false;
  }
  return true;
}

BigRational CycNumber::rational_value() const {
  if (!is_rational()) throw Error(ErrorKind::NotReal, to_string() + " is not rational");
  return c_[0];
}

void CycNumber::check_same(const CycNumber& o) const {
  if (q_ != o.q_) {
    throw Error(ErrorKind::OrderMismatch,
                "orders " + std::to_string(q_) + " and " + std::to_string(o.q_) + " differ");
  }
}

CycNumber CycNumber::operator+(const CycNumber& o) const {
  check_same(o);
  CycNumber r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

CycNumber CycNumber::operator-(const CycNumber& o) const {
  check_same(o);
  CycNumber r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

CycNumber CycNumber::operator-() const { return scaled(-1); }

CycNumber CycNumber::operator*(const CycNumber& o) const {
  check_same(o);
  std::vector<BigRational> full(static_cast<std::size_t>(q_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] != 0) full[(i + j) % q_] += c_[i] * o.c_[j];
    }
  }
  return from_powers(q_, full);
}

CycNumber CycNumber::scaled(const BigRational& s) const {
  CycNumber r = *this;
  for (auto& v : r.c_) v *= s;
  return r;
}

bool CycNumber::operator==(const CycNumber& o) const { return q_ == o.q_ && c_ == o.c_; }

CycNumber CycNumber::conjugate(std::int64_t a) const {
  if (mod(a, q_) == 0) throw Error(ErrorKind::InvalidArgument, "conjugation index not a unit");
  std::vector<BigRational> full(static_cast<std::size_t>(q_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    full[mod(a * static_cast<std::int64_t>(i), q_)] += c_[i];
  }
  return from_powers(q_, full);
}

std::complex<double> CycNumber::embed(std::int64_t a) const {
  std::complex<double> z = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const double angle = 2 * std::numbers::pi * static_cast<double>(mod(a * static_cast<std::int64_t>(i), q_)) / q_;
    z += c_[i].convert_to<double>() * std::polar(1.0, angle);
  }
  return z;
}

BigRational CycNumber::norm() const {
  CycNumber prod(q_, 1);
  for (std::int64_t a = 1; a < q_; ++a) prod = prod * conjugate(a);
  return prod.rational_value();
}

BigRational CycNumber::norm_plus() const {
  if (!is_real()) throw Error(ErrorKind::NotReal, to_string() + " is not fixed by complex conjugation");
  CycNumber prod = *this;
  for (std::int64_t a = 2; a <= (q_ - 1) / 2; ++a) prod = prod * conjugate(a);
  return prod.rational_value();
}

CycNumber CycNumber::inverse() const {
  if (is_zero()) throw Error(ErrorKind::NotInvertible, "zero has no inverse");
  CycNumber prod(q_, 1);
  for (std::int64_t a = 2; a < q_; ++a) prod = prod * conjugate(a);
  return prod.scaled(1 / (prod * *this).rational_value());
}

CycNumber CycNumber::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  CycNumber result(q_, 1), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::int64_t CycNumber::reduce_mod_lambda() const {
  BigRational sum = 0;
  for (const auto& v : c_) sum += v;
  const BigInt den = denominator(sum);
  if (den % q_ == 0) {
    throw Error(ErrorKind::NotLambdaIntegral, to_string() + " has a denominator divisible by " + std::to_string(q_));
  }
  const std::int64_t num_mod = static_cast<std::int64_t>(((numerator(sum) % q_) + q_) % q_);
  const std::int64_t den_mod = static_cast<std::int64_t>(den % q_);
  return mul_mod(num_mod, inv_mod(den_mod, q_), q_);
}

std::string CycNumber::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const BigRational& v = c_[i];
    if (v == 0) continue;
    std::string coeff = BigRational(abs(v)).str();
    std::string term;
    if (i == 0) {
      term = coeff;
    } else {
      term = (abs(v) == 1 ? "" : coeff + "*") + "z" + (i == 1 ? "" : "^" + std::to_string(i));
    }
    if (v < 0) {
      out += "-" + term;
    } else {
      out += (out.empty() ? "" : "+") + term;
    }
  }
  return out.empty() ? "0" : out;
}

CycNumber parse_cyc(std::int64_t q, std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  auto fail = [&]() {
    return Error(ErrorKind::ParseError, "bad cyclotomic expression '" + std::string(text) + "'");
  };
  if (s.empty()) throw fail();
  std::vector<BigRational> powers(static_cast<std::size_t>(q));
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t end = s.find_first_of("+-", pos);
    if (end == std::string::npos) end = s.size();
    std::string term = s.substr(pos, end - pos);
    pos = end;
    if (term.empty()) throw fail();
    BigRational coeff = 1;
    std::int64_t power = 0;
    const auto zpos = term.find('z');
    std::string coeff_text = zpos == std::string::npos ? term : term.substr(0, zpos);
    if (!coeff_text.empty() && coeff_text.back() == '*') coeff_text.pop_back();
    if (!coeff_text.empty()) {
      const Rational r = parse_rational(coeff_text);
      coeff = to_big(r);
    } else if (zpos == std::string::npos) {
      throw fail();
    }
    if (zpos != std::string::npos) {
      std::string rest = term.substr(zpos + 1);
      if (rest.empty()) {
        power = 1;
      } else if (rest[0] == '^' && rest.size() > 1) {
        try {
          std::size_t used = 0;
          power = std::stoll(rest.substr(1), &used);
          if (used + 1 != rest.size()) throw fail();
        } catch (const std::logic_error&) {
          throw fail();
        }
      } else {
        throw fail();
      }
    }
    powers[mod(power, q)] += sign * coeff;
  }
  return CycNumber::from_powers(q, powers);
}

CycNumber recognize(std::int64_t q, const std::map<std::int64_t, std::complex<double>>& values,
                    double tol, std::int64_t max_denominator) {
  const int n = static_cast<int>(q - 1);
  Eigen::MatrixXcd A(n, n);
  Eigen::VectorXcd b(n);
  for (int a = 1; a <= n; ++a) {
    auto it = values.find(a);
    if (it == values.end()) {
      throw Error(ErrorKind::InvalidArgument, "missing embedding for sigma_" + std::to_string(a));
    }
    b(a - 1) = it->second;
    for (int j = 0; j < n; ++j) {
      A(a - 1, j) = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>((a * j) % q) / q);
    }
  }
  const Eigen::VectorXcd x = A.fullPivLu().solve(b);
  CycNumber result(q);
  std::vector<BigRational> coeffs(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    if (std::abs(x(j).imag()) > tol) {
      throw Error(ErrorKind::RecognitionFailed,
                  "coefficient " + std::to_string(j) + " has imaginary part " + std::to_string(x(j).imag()));
    }
    const double re = x(j).real();
    bool found = false;
    for (std::int64_t d = 1; d <= max_denominator && !found; ++d) {
      const double numer = std::round(re * d);
      if (std::abs(re - numer / d) < tol) {
        coeffs[j] = BigRational(BigInt(static_cast<long long>(numer)), BigInt(d));
        found = true;
      }
    }
    if (!found) {
      throw Error(ErrorKind::RecognitionFailed,
                  "coefficient " + std::to_string(re) + " has no rational approximation with denominator <= " +
                      std::to_string(max_denominator));
    }
  }
  result = CycNumber::from_powers(q, coeffs);
  for (const auto& [a, v] : values) {
    if (std::abs(result.embed(a) - v) >= tol) {
      throw Error(ErrorKind::RecognitionFailed,
                  "round-trip residual " + std::to_string(std::abs(result.embed(a) - v)) + " at sigma_" +
                      std::to_string(a));
    }
  }
  return result;
}

}  // namespace lcongr
