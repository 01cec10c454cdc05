#include "lcongr/arith.hpp"

#include <charconv>
#include <numeric>

#include "lcongr/errors.hpp"

namespace lcongr {

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
  std::int64_t result = 1 % m;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = mod(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t quot = old_r / r;
    std::int64_t tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) {
    throw Error(ErrorKind::NotInvertible,
                std::to_string(a) + " is not invertible modulo " + std::to_string(m));
  }
  return mod(old_s, m);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::int64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for 64-bit integers.
  for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::int64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::int64_t> primes_below(std::int64_t bound) {
  std::vector<std::int64_t> primes;
  if (bound <= 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(bound), false);
  for (std::int64_t i = 2; i < bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::int64_t j = i * i; j < bound; j += i) composite[j] = true;
  }
  return primes;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> factors;
  n = n < 0 ? -n : n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    factors.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

std::int64_t primitive_root(std::int64_t p) {
  const auto factors = prime_factors(p - 1);
  for (std::int64_t g = 2; g < p; ++g) {
    bool generator = true;
    for (std::int64_t f : factors) {
      if (pow_mod(g, (p - 1) / f, p) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  return 1;  // p == 2
}

int legendre(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (a == 0) return 0;
  return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::int64_t sigma1(std::int64_t n) {
  std::int64_t total = 0;
  for (std::int64_t d : divisors(n)) total += d;
  return total;
}

std::int64_t sigma0_even(std::int64_t n) {
  std::int64_t count = 0;
  for (std::int64_t d : divisors(n)) count += (d % 2 == 0);
  return count;
}

int ord(const Rational& x, std::int64_t q) {
  if (x.numerator() == 0) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
  int v = 0;
  for (std::int64_t n = x.numerator(); n % q == 0; n /= q) ++v;
  for (std::int64_t d = x.denominator(); d % q == 0; d /= q) --v;
  return v;
}

std::int64_t reduce_rational(const Rational& x, std::int64_t q, std::int64_t modulus) {
  if (x.denominator() % q == 0) {
    throw Error(ErrorKind::NotLambdaIntegral,
                to_string(x) + " has denominator divisible by " + std::to_string(q));
  }
  return mul_mod(mod(x.numerator(), modulus), inv_mod(x.denominator(), modulus), modulus);
}

std::string to_string(const Rational& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    std::int64_t value = 0;
    if (!part.empty() && part.front() == '+') part.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) {
      throw Error(ErrorKind::ParseError, "bad rational '" + std::string(text) + "'");
    }
    return value;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

}  // namespace lcongr
