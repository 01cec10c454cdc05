#include <doctest.h>

#include <random>

#include "lcongr/arith.hpp"
#include "lcongr/errors.hpp"

using namespace lcongr;

TEST_CASE("modular helpers") {
  CHECK(mod(-7, 3) == 2);
  CHECK(pow_mod(3, 6, 7) == 1);
  CHECK(inv_mod(3, 7) == 5);
  CHECK_THROWS_AS(inv_mod(3, 9), Error);
  CHECK(primitive_root(7) == 3);
  CHECK(primitive_root(11) == 2);
  CHECK(legendre(2, 7) == 1);
  CHECK(legendre(3, 7) == -1);
  CHECK(legendre(14, 7) == 0);
}

TEST_CASE("primes and divisors") {
  const auto ps = primes_below(30);
  CHECK(ps == std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  for (std::int64_t p : ps) CHECK(is_prime(p));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(prime_factors(1356) == std::vector<std::int64_t>{2, 3, 113});
  CHECK(sigma1(12) == 28);
  CHECK(sigma0_even(12) == 4);
  CHECK(divisors(12).size() == 6);
}

TEST_CASE("valuations and reduction of rationals") {
  CHECK(ord(Rational(1, 5), 5) == -1);
  CHECK(ord(Rational(18, 7), 3) == 2);
  CHECK(reduce_rational(Rational(1, 2), 3, 3) == 2);
  CHECK(reduce_rational(Rational(-4, 5), 3, 9) == mod(-4 * inv_mod(5, 9), 9));
  CHECK_THROWS_AS(reduce_rational(Rational(1, 3), 3, 3), Error);
}

TEST_CASE("reduction mod q is a ring map on q-integral rationals") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> num(-50, 50), den(1, 40);
  for (std::int64_t q : {3, 5, 7}) {
    for (int i = 0; i < 200; ++i) {
      Rational x(num(rng), den(rng)), y(num(rng), den(rng));
      if (x.denominator() % q == 0 || y.denominator() % q == 0) continue;
      CHECK(reduce_rational(x + y, q, q) == mod(reduce_rational(x, q, q) + reduce_rational(y, q, q), q));
      CHECK(reduce_rational(x * y, q, q) == mod(reduce_rational(x, q, q) * reduce_rational(y, q, q), q));
    }
  }
}

TEST_CASE("rational text round trip") {
  CHECK(to_string(Rational(-3, 4)) == "-3/4");
  CHECK(to_string(Rational(6, 3)) == "2");
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational("121") == Rational(121));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
}
