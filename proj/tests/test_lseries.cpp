#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "lcongr/errors.hpp"
#include "lcongr/lseries.hpp"
#include "support.hpp"

using namespace lcongr;

namespace {

bool small_conductor(const CurveData& E) { return E.conductor < 1000; }

// Real period by quadrature. With e1 the largest root of f = 4x^3 + b2 x^2 +
// 2 b4 x + b6 and x = e1 + t^2, dx / sqrt(f) = dt / sqrt((t^2 - r)^2 + c)
// where r = -(12 e1 + b2)/8 and c = f'(e1)/4 - r^2, both taken in high
// precision since c is tiny when the other two roots are nearly real.
double period_by_quadrature(const CurveData& E) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  const auto [a1, a2, a3, a4, a6] = E.ainvs;
  const Big b2 = a1 * a1 + 4 * a2, b4 = 2 * a4 + a1 * a3, b6 = Big(a3) * a3 + 4 * Big(a6);
  auto f = [&](const Big& x) { return ((4 * x + b2) * x + 2 * b4) * x + b6; };
  auto df = [&](const Big& x) { return (12 * x + 2 * b2) * x + 2 * b4; };
  // Bisection for the largest root: right of the larger critical point if f
  // is not positive there, otherwise left of the smaller one.
  const Big bound = 1 + std::max({abs(b2) / 4, abs(b4) / 2, abs(b6) / 4});
  Big lo = -bound, hi = bound;
  const Big crit_disc = 4 * b2 * b2 - 96 * b4;
  if (crit_disc >= 0) {
    const Big x_small = (-2 * b2 - sqrt(crit_disc)) / 24, x_large = (-2 * b2 + sqrt(crit_disc)) / 24;
    if (f(x_large) <= 0) lo = x_large;
    else hi = x_small;
  }
  for (int i = 0; i < 400; ++i) {
    const Big mid = (lo + hi) / 2;
    (f(mid) > 0 ? hi : lo) = mid;
  }
  const Big e1 = (lo + hi) / 2;
  const Big r_big = -(12 * e1 + b2) / 8;
  const double r = static_cast<double>(r_big), c = static_cast<double>(df(e1) / 4 - r_big * r_big);
  auto g = [&](double t) { return 1 / std::sqrt((t * t - r) * (t * t - r) + c); };
  // The integrand peaks at t^2 = r; split there.
  const double peak = r > 0 ? std::sqrt(r) : 1.0;
  boost::math::quadrature::tanh_sinh<double> finite;
  boost::math::quadrature::exp_sinh<double> tail;
  const double half = finite.integrate(g, 0.0, peak) + finite.integrate(g, peak, 2 * peak) +
                      tail.integrate(g, 2 * peak, std::numeric_limits<double>::infinity());
  const bool two_components = discriminant(E) > 0;
  return 2 * half * (two_components ? 2 : 1);
}

}  // namespace

TEST_CASE("series cutoff is never shorter than the ln(1e11) rule") {
  for (double Q : {3.3, 20.0, 150.0, 4000.0}) {
    const auto spec_rule = static_cast<std::int64_t>(std::ceil(Q / (2 * std::numbers::pi) * std::log(1e11)));
    CHECK(series_cutoff(Q, 1e-11) >= spec_rule);
  }
}

TEST_CASE("11a1 period and central value") {
  const LSeries& L = testing::series("11a1");
  CHECK(L.root_number() == 1);
  CHECK(L.lratio() == Rational(1, 5));
  CHECK(L.l1() == doctest::Approx(L.omega() / 5).epsilon(1e-9));
}

TEST_CASE("AGM period agrees with quadrature") {
  for (const std::string label : {"11a1", "14a1", "15a1", "37a1", "50b1", "702e3"}) {
    CAPTURE(label);
    CHECK(testing::series(label).omega() == doctest::Approx(period_by_quadrature(testing::curve(label))).epsilon(1e-9));
  }
}

TEST_CASE("root numbers and L-ratios agree with the dataset") {
  for (const CurveData& E : testing::corpus().curves()) {
    CAPTURE(E.label);
    const LSeries& L = testing::series(E.label);
    if (E.root_number) CHECK(L.root_number() == *E.root_number);
    if (L.root_number() == -1) {
      CHECK_THROWS_AS(L.lratio(), Error);
      continue;
    }
    const Rational r = L.lratio();
    if (E.lratio_hint) CHECK(r == *E.lratio_hint);
    CHECK(r.denominator() <= 120);
  }
}

TEST_CASE("twisted values in the worked examples") {
  const auto chi7 = parse_character("7:3:chi(3)=z2");
  const auto chi11 = parse_character("11:5:chi(2)=z");
  CHECK(testing::series("1356f1").algebraic_twisted(chi7).algebraic == parse_cyc(3, "-z^2"));
  CHECK(testing::series("1356d1").algebraic_twisted(chi7).algebraic == parse_cyc(3, "z^2"));
  CHECK(testing::series("544b1").algebraic_twisted(chi11).algebraic == parse_cyc(5, "-z^3-z"));
  CHECK(testing::series("307a1").algebraic_twisted(chi11).algebraic == CycNumber(5, 1));
}

TEST_CASE("twisted values are integral for c0 = 1") {
  for (const CurveData& E : testing::corpus().curves()) {
    if (E.manin_c0 != 1 || !small_conductor(E)) continue;
    const LSeries& L = testing::series(E.label);
    if (L.root_number() == -1) continue;
    for (auto [p, q] : {std::pair{7, 3}, {13, 3}, {11, 5}}) {
      if (E.conductor % p == 0) continue;
      CAPTURE(E.label);
      CAPTURE(p);
      const auto r = L.algebraic_twisted(DirichletCharacter::prime(p, q, 1));
      CHECK(r.algebraic.is_integral());
      CHECK(r.fe_residual < 1e-6);
    }
  }
}

TEST_CASE("Galois equivariance of twisted values") {
  for (const char* label : {"11a1", "37a1", "20a1", "1356d1"}) {
    const LSeries& L = testing::series(label);
    if (L.root_number() == -1) continue;
    for (auto [p, q] : {std::pair{13, 3}, {11, 5}}) {
      if (L.curve().conductor % p == 0) continue;
      const auto chi = DirichletCharacter::prime(p, q, 1);
      const CycNumber base = L.algebraic_twisted(chi).algebraic;
      for (std::int64_t b = 2; b < q; ++b) {
        CHECK(L.algebraic_twisted(chi.conjugate(b)).algebraic == base.conjugate(b));
      }
    }
  }
}

TEST_CASE("norm of the recognized value matches the analytic product") {
  for (const char* label : {"11a1", "307a1", "714b1"}) {
    const LSeries& L = testing::series(label);
    const auto chi = DirichletCharacter::prime(11, 5, 1);
    if (L.curve().conductor % 11 == 0) continue;
    std::complex<double> product = 1;
    for (std::int64_t b = 1; b < 5; ++b) product *= L.normalized(chi.conjugate(b));
    const double exact = static_cast<double>(L.algebraic_twisted(chi).algebraic.norm());
    CHECK(std::abs(product - exact) <= 1e-5 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("twists sharing a prime with the conductor") {
  const LSeries& L = testing::series("50b1");
  CHECK_THROWS_AS(L.algebraic_twisted(DirichletCharacter::quadratic(5)), Error);
  const auto r = L.algebraic_twisted_clash(DirichletCharacter::quadratic(5));
  CHECK(r.algebraic == CycNumber(2, BigRational(1, 3)));
  CHECK_FALSE(r.algebraic.is_integral());
  CHECK(r.twisted_level == 50);
}
