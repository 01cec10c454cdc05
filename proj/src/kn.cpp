#include "lcongr/kn.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "lcongr/density.hpp"
#include "lcongr/ec_core.hpp"
#include "lcongr/errors.hpp"

namespace lcongr {

namespace {

BigInt abs_integer(const BigRational& x, const std::string& what) {
  if (denominator(x) != 1) throw Error(ErrorKind::NotIntegral, what + " is not an integer: " + x.str());
  const BigInt n = numerator(x);
  return n < 0 ? BigInt(-n) : n;
}

std::int64_t mod3(const BigInt& x) { return mod(static_cast<std::int64_t>(x % 3), 3); }

double max_abs_diff(const DensityProfile& a, const DensityProfile& b) {
  double out = 0;
  for (std::int64_t i = 0; i < a.q; ++i) {
    const Rational d = a.at(i) - b.at(i);
    out = std::max(out, std::abs(static_cast<double>(d.numerator()) / static_cast<double>(d.denominator())));
  }
  return out;
}

}  // namespace

int real_components(const CurveData& curve) { return discriminant(curve) > 0 ? 2 : 1; }

CycNumber l_plus(const LSeries& series, const DirichletCharacter& chi) {
  const CycNumber l = series.algebraic_twisted(chi).algebraic;
  const CycNumber chi_n = chi.evaluate(series.curve().conductor);
  const CycNumber one(chi.order(), 1);
  const CycNumber out = chi_n == one ? l : l * (one + chi_n.conjugate(-1));
  if (!out.is_real()) {
    throw Error(ErrorKind::NotReal, series.curve().label + ": L+ for " + chi.id() + " is not real: " + out.to_string());
  }
  return out;
}

GcdEstimate estimate_gcd(const LSeries& series, std::int64_t q, std::int64_t count,
                         const std::vector<std::int64_t>& conductors) {
  const CurveData& E = series.curve();
  GcdEstimate out;
  out.label = E.label;
  out.q = q;
  out.components = real_components(E);
  BigRational scale = 1;
  for (std::int64_t i = 0; i < (q - 1) / 2; ++i) scale *= out.components;
  std::vector<std::int64_t> ps = conductors;
  const bool automatic = ps.empty();
  if (automatic) ps = eligible_primes(E.conductor, q, 100'000);
  BigInt g = 0;
  std::int64_t last_change = 0;
  for (std::int64_t p : ps) {
    if (automatic && out.nonzero >= count) break;
    const auto chi = DirichletCharacter::prime(p, q, 1);
    const BigInt n = abs_integer(l_plus(series, chi).norm_plus() * scale, "Nm+(L+)");
    out.sample.emplace_back(p, n);
    if (n == 0) continue;
    ++out.nonzero;
    const BigInt next = boost::multiprecision::gcd(g, n);
    if (next != g) last_change = out.nonzero;
    g = next;
  }
  if (out.nonzero == 0) throw Error(ErrorKind::AllZero, E.label + ": every sampled L+ vanishes");
  out.gcd = static_cast<std::int64_t>(g);
  out.stable = out.nonzero - last_change >= 10;
  return out;
}

std::int64_t l_tilde_residue(const LSeries& series, const DirichletCharacter& chi, std::int64_t gcd) {
  if (chi.order() != 3) throw Error(ErrorKind::InvalidArgument, "L~+ residues need a cubic character");
  if (gcd % 3 == 0) throw Error(ErrorKind::GcdDivisible, series.curve().label + ": 3 divides gcd = " + std::to_string(gcd));
  if (series.curve().manin_c0 % 3 == 0) throw Error(ErrorKind::HypothesisFailed, series.curve().label + ": 3 divides c0");
  const BigRational value = l_plus(series, chi).rational_value() * real_components(series.curve());
  if (denominator(value) != 1 || numerator(value) % gcd != 0) {
    throw Error(ErrorKind::NotIntegral, series.curve().label + ": " + std::to_string(gcd) + " does not divide " + value.str());
  }
  return mod3(numerator(value) / gcd);
}

std::int64_t congruence_residue(const LSeries& series, const DirichletCharacter& chi, std::int64_t gcd) {
  const CurveData& E = series.curve();
  const bool trivial = chi.exponent(mod(E.conductor, chi.conductor())) == 0;
  const Rational l = series.lratio() * (trivial ? 2 : 1) * count_points(E, chi.conductor()) * real_components(E) * gcd;
  return reduce_rational(l, 3, 3);
}

KNHypothesis kn_hypothesis(const CurveData& curve) {
  KNHypothesis h;
  h.no_3_isogeny = curve.has_no_isogeny(3);
  h.discriminant_power = discriminant_conductor_power(curve);
  h.certified = h.no_3_isogeny && h.discriminant_power && *h.discriminant_power % 3 != 0;
  return h;
}

ResiduePrediction predicted_residue(const CurveData& curve, std::int64_t p) {
  ResiduePrediction r;
  r.p = p;
  r.points = count_points(curve, p);
  r.split_in_K = splits_completely_in_K3(curve, p);
  r.certified = kn_hypothesis(curve).certified;
  const std::int64_t t = mod(r.points, 3);
  if (t == 0) {
    r.case_index = 0;
    r.residue = 0;
  } else if (t == 1 && r.split_in_K) {
    r.case_index = 1;
    r.residue = 2;
  } else {
    r.case_index = 2;
    r.residue = 1;
  }
  return r;
}

KNRecord kn_record(const LSeries& series, std::int64_t p, std::int64_t gcd) {
  const CurveData& E = series.curve();
  const auto chi = DirichletCharacter::prime(p, 3, 1);
  KNRecord r;
  r.label = E.label;
  r.character = chi.id();
  r.p = p;
  r.chi_n = chi.evaluate(E.conductor);
  r.lvalue = series.algebraic_twisted(chi).algebraic;
  r.lplus = l_plus(series, chi);
  r.norm_plus = numerator(r.lplus.norm_plus());
  r.observed_residue = l_tilde_residue(series, chi, gcd);
  r.congruence_residue = congruence_residue(series, chi, gcd);
  r.prediction = predicted_residue(E, p);
  r.match = r.observed_residue == r.prediction.residue;
  return r;
}

DensityProfile delta_prime_expected() {
  DensityProfile p;
  p.q = 3;
  p.values = {Rational(9, 24), Rational(15, 24), Rational(1, 24)};
  return p;
}

DensityProfile delta_prime_sl2() {
  const SubgroupCensus sl = generate({{1, 1, 0, 1}, {1, 0, 1, 1}}, 3);
  std::vector<std::int64_t> counts(3, 0);
  for (const Mat2& m : sl.elements) {
    const std::int64_t points = mod(1 + m.det(3) - m.trace(3), 3);
    const bool minus_one = m == Mat2{2, 0, 0, 2};
    ++counts[points == 0 ? 0 : (minus_one ? 2 : 1)];
  }
  DensityProfile p;
  p.q = 3;
  for (std::int64_t c : counts) p.values.emplace_back(c, sl.size());
  return p;
}

DeltaPrime delta_prime(const CurveData& curve, std::int64_t limit, unsigned workers) {
  if (limit > 10'000'000) throw Error(ErrorKind::InvalidArgument, "sweep limit above 10^7");
  // Primes dividing the discriminant are excluded along with those dividing N.
  std::vector<std::int64_t> primes;
  const BigInt disc = discriminant(curve);
  for (std::int64_t p : eligible_primes(curve.conductor, 3, limit)) {
    if (disc % p != 0) primes.push_back(p);
  }
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<std::vector<std::int64_t>>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      std::vector<std::int64_t> counts(3, 0);
      for (std::size_t i = w; i < primes.size(); i += workers) ++counts[predicted_residue(curve, primes[i]).residue];
      return counts;
    }));
  }
  DeltaPrime out;
  out.label = curve.label;
  out.limit = limit;
  out.counts.assign(3, 0);
  for (auto& j : jobs) {
    const auto part = j.get();
    for (int i = 0; i < 3; ++i) out.counts[i] += part[i];
  }
  out.eligible = static_cast<std::int64_t>(primes.size());
  out.empirical.q = 3;
  for (std::int64_t c : out.counts) out.empirical.values.push_back(out.eligible ? Rational(c, out.eligible) : Rational(0));
  out.expected = delta_prime_expected();
  out.max_deviation = max_abs_diff(out.empirical, out.expected);
  out.sl2_count = delta_prime_sl2();
  out.sl2_deviation = max_abs_diff(out.empirical, out.sl2_count);
  out.certified = kn_hypothesis(curve).certified;
  return out;
}

}  // namespace lcongr
