#include "lcongr/modsym.hpp"

#include <cmath>
#include <numbers>

#include "lcongr/errors.hpp"

namespace lcongr {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kSymbolEps = 1e-10;
constexpr std::int64_t kMaxTerms = 1'000'000;
constexpr double kRoundingThreshold = 1e-4;

std::pair<std::int64_t, std::int64_t> reduced(std::int64_t a, std::int64_t m) {
  if (m <= 0) throw Error(ErrorKind::InvalidArgument, "cusp denominator must be positive");
  const std::int64_t g = gcd(a, m);
  return {a / g, m / g};
}

}  // namespace

IntMatrix gamma_for_cusp(std::int64_t a, std::int64_t m, std::int64_t N) {
  if (m <= 0 || N <= 0) throw Error(ErrorKind::InvalidArgument, "gamma_for_cusp needs m, N > 0");
  if (gcd(a, m) != 1) throw Error(ErrorKind::InvalidArgument, "a and m must be coprime");
  if (gcd(m, N) != 1) {
    throw Error(ErrorKind::BadCusp, "cusp " + std::to_string(a) + "/" + std::to_string(m) +
                                        " has gcd(m, N) > 1 for N = " + std::to_string(N));
  }
  if (a == 0) return {1, 0, 0, 1};
  // a' m - a N k = 1 with 1 <= k <= m; c' = N k.
  std::int64_t k = m == 1 ? 1 : mod(-inv_mod(mul_mod(mod(a, m), N % m, m), m), m);
  const std::int64_t c = N * k;
  const std::int64_t num = 1 + a * c;
  if (num % m != 0) throw Error(ErrorKind::Mismatch, "gamma_for_cusp: non-integral entry");
  return {num / m, a, c, m};
}

ModularSymbols::ModularSymbols(const LSeries& series) : series_(series) {}

std::complex<double> ModularSymbols::antiderivative_difference(std::complex<double> z0,
                                                               std::complex<double> z1) const {
  // P(z1) - P(z0) with P(z) = sum a_n / n e^(2 pi i n z).
  const double y = std::min(z0.imag(), z1.imag());
  if (y <= 0) throw Error(ErrorKind::InvalidArgument, "base point must lie in the upper half plane");
  const std::int64_t nmax = series_cutoff(1 / y, kSymbolEps);
  if (nmax > kMaxTerms) {
    throw Error(ErrorKind::SlowConvergence, "modular symbol needs " + std::to_string(nmax) + " terms");
  }
  const auto tab = series_.table(nmax);
  std::complex<double> sum = 0;
  for (std::int64_t n = 1; n <= nmax; ++n) {
    const std::int64_t an = tab->at(n);
    if (an == 0) continue;
    const auto e1 = std::exp(std::complex<double>(0, kTwoPi * n) * z1);
    const auto e0 = std::exp(std::complex<double>(0, kTwoPi * n) * z0);
    sum += static_cast<double>(an) / n * (e1 - e0);
  }
  return sum;
}

std::complex<double> ModularSymbols::mu(std::int64_t a, std::int64_t m) const {
  std::tie(a, m) = reduced(a, m);
  const std::int64_t N = series_.curve().conductor;
  const IntMatrix g = gamma_for_cusp(a, m, N);
  if (m == 1) return 0;
  const double c = static_cast<double>(g[2]);
  const std::complex<double> z0((-static_cast<double>(m)) / c, 1 / c);
  const std::complex<double> z1(static_cast<double>(g[0]) / c, 1 / c);  // delta(z0)
  return antiderivative_difference(z0, z1);
}

std::complex<double> ModularSymbols::mu_any(std::int64_t a, std::int64_t m) const {
  std::tie(a, m) = reduced(a, m);
  const std::int64_t N = series_.curve().conductor;
  if (gcd(m, N) == 1) return mu(a, m);
  if (m % N != 0) {
    throw Error(ErrorKind::BadCusp, "cusp " + std::to_string(a) + "/" + std::to_string(m) +
                                        " is neither coprime to N nor a multiple of N");
  }
  // gamma = [[a, b], [m, d]] in Gamma_0(N) carries infinity to a/m, and
  // mu(a/m) = int_0^oo + int_oo^(a/m) = -L(E,1) + P(gamma z0) - P(z0).
  const std::int64_t d = inv_mod(mod(a, m), m);
  const double md = static_cast<double>(m);
  const std::complex<double> z0(-static_cast<double>(d) / md, 1 / md);
  const std::complex<double> z1(static_cast<double>(a) / md, 1 / md);
  const double l1 = series_.root_number() == -1 ? 0.0 : series_.l1();
  return -l1 + antiderivative_difference(z0, z1);
}

SymbolValue ModularSymbols::symbol(std::int64_t a, std::int64_t m, bool any_cusp) const {
  SymbolValue s;
  s.label = series_.curve().label;
  std::tie(s.a, s.m) = reduced(a, m);
  s.raw = any_cusp ? mu_any(s.a, s.m) : mu(s.a, s.m);
  s.normalized = static_cast<double>(series_.curve().manin_c0) / series_.omega() * 2 * s.raw.real();
  s.plus = static_cast<std::int64_t>(std::llround(s.normalized));
  s.residual = std::abs(s.normalized - static_cast<double>(s.plus));
  return s;
}

std::int64_t ModularSymbols::mu_plus(std::int64_t a, std::int64_t m) const {
  const SymbolValue s = symbol(a, m);
  if (s.residual >= kRoundingThreshold) {
    throw Error(ErrorKind::NotIntegral, s.label + ": mu+(" + std::to_string(s.a) + "/" + std::to_string(s.m) +
                                            ") = " + std::to_string(s.normalized) + " is not an integer");
  }
  return s.plus;
}

Rational ModularSymbols::c0_lratio() const {
  if (series_.root_number() == -1) return Rational(0);
  return series_.lratio() * series_.curve().manin_c0;
}

HeckeReport ModularSymbols::hecke_identity(std::int64_t n, bool allow_shared_factor) const {
  if (n <= 0) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  const CurveData& E = series_.curve();
  if (!allow_shared_factor && gcd(n, E.conductor) != 1) {
    throw Error(ErrorKind::BadCusp, "n = " + std::to_string(n) + " is not coprime to N");
  }
  HeckeReport r;
  r.n = n;
  r.an = series_.table(n)->at(n);
  r.sigma1 = sigma1(n);
  r.sigma0_even = sigma0_even(n);
  r.points_f2 = count_reduction_points(E, 2);
  r.lhs = c0_lratio() * (r.an - r.sigma1 + r.points_f2 * r.sigma0_even);
  r.lhs_integral = r.lhs.denominator() == 1;
  for (std::int64_t m : divisors(n)) {
    for (std::int64_t a = 1; a <= (m - 1) / 2; ++a) {
      const SymbolValue s = symbol(a, m, allow_shared_factor);
      r.rhs += s.plus;
      r.rhs_numeric += s.normalized;
      r.max_residual = std::max(r.max_residual, s.residual);
    }
  }
  r.holds = r.lhs_integral && r.max_residual < kRoundingThreshold && r.lhs == Rational(r.rhs);
  return r;
}

CycNumber ModularSymbols::birch_sum(const DirichletCharacter& chi) const {
  const std::int64_t n = chi.conductor();
  if (gcd(n, series_.curve().conductor) != 1) {
    throw Error(ErrorKind::ConductorClash, "conductor " + std::to_string(n) + " of " + chi.id() +
                                               " is not coprime to N = " + std::to_string(series_.curve().conductor));
  }
  CycNumber sum(chi.order());
  for (std::int64_t a = 1; a <= (n - 1) / 2; ++a) {
    if (gcd(a, n) != 1) continue;
    sum = sum + chi.evaluate(a).conjugate(-1).scaled(BigRational(mu_plus(a, n)));
  }
  return sum;
}

std::int64_t ModularSymbols::epsilon_term(std::int64_t n) const {
  if (n <= 0) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  if (gcd(n, series_.curve().conductor) != 1) {
    throw Error(ErrorKind::BadCusp, "n = " + std::to_string(n) + " is not coprime to N");
  }
  std::int64_t eps = 0;
  for (std::int64_t a = 1; a <= (n - 1) / 2; ++a) {
    if (gcd(a, n) != 1) eps += mu_plus(a, n);
  }
  for (std::int64_t m : divisors(n)) {
    if (m == n) continue;
    for (std::int64_t a = 1; a <= (m - 1) / 2; ++a) eps += mu_plus(a, m);
  }
  return eps;
}

CongruenceReport ModularSymbols::congruence_check(const DirichletCharacter& chi) const {
  const CurveData& E = series_.curve();
  CongruenceReport r;
  r.label = E.label;
  r.character = chi.id();
  r.q = chi.order();
  r.n = chi.conductor();
  if (gcd(r.n, E.conductor) != 1) {
    throw Error(ErrorKind::ConductorClash, "conductor " + std::to_string(r.n) + " is not coprime to N");
  }
  r.lvalue = series_.algebraic_twisted(chi).algebraic.scaled(BigRational(E.manin_c0));
  r.lhs_residue = r.lvalue.reduce_mod_lambda();
  const Rational base = c0_lratio();
  if (is_prime(r.n)) {
    r.rhs_value = -base * count_points(E, r.n);
  } else {
    r.epsilon = epsilon_term(r.n);
    const std::int64_t an = series_.table(r.n)->at(r.n);
    r.rhs_value = base * (an - sigma1(r.n) + count_reduction_points(E, 2) * sigma0_even(r.n)) - r.epsilon;
  }
  r.rhs_residue = reduce_rational(r.rhs_value, r.q, r.q);
  r.match = r.lhs_residue == r.rhs_residue;
  if (r.q == 3) {
    const CycNumber trace = r.lvalue + r.lvalue.conjugate(-1);
    r.lhs_trace_mod9 = reduce_rational(to_small(trace.rational_value()), 3, 9);
    r.rhs_negated_mod9 = reduce_rational(-r.rhs_value, 3, 9);
  }
  return r;
}

ParityReport ModularSymbols::quadratic_parity_check(const std::string& kind, std::int64_t p1,
                                                    std::int64_t p2) const {
  const CurveData& E = series_.curve();
  ParityReport r;
  r.label = E.label;
  r.kind = kind;
  std::int64_t d = 0;
  const Rational base = c0_lratio();
  if (kind == "p1p2") {
    if (p1 == p2 || p1 <= 2 || p2 <= 2 || !is_prime(p1) || !is_prime(p2)) {
      throw Error(ErrorKind::InvalidArgument, "p1p2 needs two distinct odd primes");
    }
    const std::int64_t n = p1 * p2;
    if (gcd(n, E.conductor) != 1) throw Error(ErrorKind::ConductorClash, "p1 p2 is not coprime to N");
    // The even quadratic character of conductor p1 p2 is (d / .) with d = p1 p2 > 0.
    if (n % 4 != 1) {
      throw Error(ErrorKind::NoSuchCharacter, "no even quadratic character of conductor " + std::to_string(n));
    }
    d = n;
    const auto& tab = *series_.table(std::max(p1, p2));
    r.rhs_value = base * (tab.at(p1) * tab.at(p2) - n - p1 - p2 - 1);
  } else if (kind == "eight") {
    if (E.conductor % 2 == 0) throw Error(ErrorKind::ConductorClash, "N is even");
    d = 8;
    const std::int64_t a2 = ap(E, 2);
    r.rhs_value = base * ((a2 + 1) * (a2 + 2) * (a2 - 3));
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown parity kind " + kind);
  }
  const DirichletCharacter chi = DirichletCharacter::quadratic(d);
  r.character = chi.id();
  r.lhs_value = to_small(series_.algebraic_twisted(chi).algebraic.scaled(BigRational(E.manin_c0)).rational_value());
  r.lhs_mod2 = reduce_rational(r.lhs_value, 2, 2);
  r.rhs_mod2 = reduce_rational(r.rhs_value, 2, 2);
  r.epsilon_mod2 = mod(epsilon_term(d), 2);
  r.match = r.lhs_mod2 == r.rhs_mod2 && r.epsilon_mod2 == 0;
  return r;
}

}  // namespace lcongr
