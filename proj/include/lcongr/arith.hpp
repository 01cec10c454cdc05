#pragma once

// Elementary integer and rational arithmetic shared by every module.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace lcongr {

using Rational = boost::rational<std::int64_t>;
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Non-negative residue of a modulo m (m > 0).
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m);

// Inverse of a modulo m; throws NotInvertible when gcd(a, m) != 1.
std::int64_t inv_mod(std::int64_t a, std::int64_t m);

bool is_prime(std::int64_t n);
std::vector<std::int64_t> primes_below(std::int64_t bound);
std::vector<std::int64_t> prime_factors(std::int64_t n);

// Smallest primitive root modulo an odd prime p.
std::int64_t primitive_root(std::int64_t p);

// Legendre symbol (a/p) for an odd prime p, via Euler's criterion.
int legendre(std::int64_t a, std::int64_t p);

std::int64_t sigma1(std::int64_t n);
// Number of even divisors of n.
std::int64_t sigma0_even(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);

// q-adic valuation of a non-zero rational.
int ord(const Rational& x, std::int64_t q);

// Image of a q-integral rational in Z/modulus, where modulus is a power of q.
// Throws NotLambdaIntegral when q divides the denominator.
std::int64_t reduce_rational(const Rational& x, std::int64_t q, std::int64_t modulus);

std::string to_string(const Rational& x);
Rational parse_rational(std::string_view text);

}  // namespace lcongr
