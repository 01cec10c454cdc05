#include <doctest.h>

#include <complex>
#include <random>

#include "lcongr/cyclotomic.hpp"
#include "lcongr/errors.hpp"

using namespace lcongr;

namespace {

CycNumber random_integral(std::int64_t q, std::mt19937_64& rng, std::int64_t bound = 10) {
  std::uniform_int_distribution<std::int64_t> coeff(-bound, bound);
  std::vector<BigRational> c(static_cast<std::size_t>(q - 1));
  for (auto& x : c) x = coeff(rng);
  return CycNumber::from_powers(q, c);
}

// Product of all embeddings, computed in floating point.
std::complex<double> embedded_norm(const CycNumber& x) {
  std::complex<double> acc = 1;
  for (std::int64_t a = 1; a < x.order(); ++a) acc *= x.embed(a);
  return acc;
}

}  // namespace

TEST_CASE("basic identities in Q(zeta_q)") {
  for (std::int64_t q : {3, 5, 7}) {
    CycNumber sum(q);
    for (std::int64_t k = 0; k < q; ++k) sum = sum + CycNumber::zeta(q, k);
    CHECK(sum.is_zero());
    CHECK(CycNumber::zeta(q).pow(q) == CycNumber(q, 1));
    CHECK((CycNumber(q, 1) - CycNumber::zeta(q)).norm() == q);
  }
  CHECK(parse_cyc(3, "-z^2") == parse_cyc(3, "1+z"));
  CHECK(parse_cyc(5, "1+z^4").norm() == 1);
  CHECK(parse_cyc(5, "-2*z^3-3*z^2-2*z").to_string() == "-2*z-3*z^2-2*z^3");
}

TEST_CASE("norm is multiplicative and matches the embeddings") {
  std::mt19937_64 rng(11);
  for (std::int64_t q : {3, 5, 7}) {
    for (int i = 0; i < 50; ++i) {
      const CycNumber x = random_integral(q, rng), y = random_integral(q, rng);
      CHECK((x * y).norm() == x.norm() * y.norm());
      const double exact = static_cast<double>(x.norm());
      const std::complex<double> approx = embedded_norm(x);
      CHECK(std::abs(approx - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("reduction mod lambda is a ring homomorphism") {
  std::mt19937_64 rng(13);
  for (std::int64_t q : {3, 5, 7}) {
    for (int i = 0; i < 100; ++i) {
      const CycNumber x = random_integral(q, rng), y = random_integral(q, rng);
      CHECK((x + y).reduce_mod_lambda() == mod(x.reduce_mod_lambda() + y.reduce_mod_lambda(), q));
      CHECK((x * y).reduce_mod_lambda() == mod(x.reduce_mod_lambda() * y.reduce_mod_lambda(), q));
    }
    CHECK(CycNumber::zeta(q, 3).reduce_mod_lambda() == 1);
  }
}

TEST_CASE("recognition inverts embedding") {
  std::mt19937_64 rng(17);
  for (std::int64_t q : {3, 5, 7}) {
    for (int i = 0; i < 50; ++i) {
      const CycNumber x = random_integral(q, rng);
      std::map<std::int64_t, std::complex<double>> values;
      for (std::int64_t a = 1; a < q; ++a) values[a] = x.embed(a);
      CHECK(recognize(q, values) == x);
    }
  }
  std::map<std::int64_t, std::complex<double>> values;
  const CycNumber z2 = CycNumber::zeta(3, 2);
  for (std::int64_t a = 1; a < 3; ++a) values[a] = z2.embed(a) + std::complex<double>(1e-9, -1e-9);
  CHECK(recognize(3, values) == z2);
  CHECK(recognize(3, {{1, 1.0}, {2, 1.0}}) == CycNumber(3, 1));
  CHECK_THROWS_AS(recognize(3, {{1, 0.1414213562}, {2, 0.1414213562}}), Error);
}

TEST_CASE("conjugation, inverse and realness") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 30; ++i) {
    const CycNumber x = random_integral(5, rng);
    if (x.is_zero()) continue;
    CHECK((x * x.inverse()) == CycNumber(5, 1));
    CHECK((x + x.conjugate(-1)).is_real());
    CHECK(x.conjugate(2).conjugate(3) == x.conjugate(6));
    CHECK(std::abs(x.conjugate(2).embed(1) - x.embed(2)) < 1e-9);
  }
  CHECK_THROWS_AS(CycNumber::zeta(3).rational_value(), Error);
}

TEST_CASE("conversion between rational types") {
  CHECK(to_small(to_big(Rational(-7, 3))) == Rational(-7, 3));
  BigRational huge = 1;
  for (int i = 0; i < 70; ++i) huge *= 2;
  CHECK_THROWS_AS(to_small(huge), Error);
}
