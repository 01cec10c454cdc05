#include "lcongr/lseries.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "lcongr/errors.hpp"

namespace lcongr {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kSeriesEps = 1e-11;

using Real = boost::multiprecision::cpp_bin_float_50;

Real agm(Real a, Real b) {
  const Real tol("1e-45");
  for (int i = 0; i < 200 && abs(a - b) > tol * abs(a); ++i) {
    const Real next = (a + b) / 2;
    b = sqrt(a * b);
    a = next;
  }
  return a;
}

// Real roots of 4x^3 + b2 x^2 + 2 b4 x + b6, sorted descending.
std::vector<Real> real_roots(const Real& b2, const Real& b4, const Real& b6, bool three) {
  const Real a = 4, b = b2, c = 2 * b4, d = b6;
  const Real shift = b / (3 * a);
  const Real p = (3 * a * c - b * b) / (3 * a * a);
  const Real q = (2 * b * b * b - 9 * a * b * c + 27 * a * a * d) / (27 * a * a * a);
  const Real pi = boost::math::constants::pi<Real>();
  std::vector<Real> roots;
  if (three) {
    const Real m = 2 * sqrt(-p / 3);
    Real arg = 3 * q / (p * m);
    if (arg > 1) arg = 1;
    if (arg < -1) arg = -1;
    const Real theta = acos(arg) / 3;
    for (int k = 0; k < 3; ++k) roots.push_back(m * cos(theta - 2 * pi * k / 3) - shift);
  } else {
    const Real s = sqrt(q * q / 4 + p * p * p / 27);
    roots.push_back(cbrt(-q / 2 + s) + cbrt(-q / 2 - s) - shift);
  }
  for (auto& x : roots) {
    for (int i = 0; i < 8; ++i) {
      const Real f = ((a * x + b) * x + c) * x + d;
      const Real df = (3 * a * x + 2 * b) * x + c;
      if (df == 0) break;
      x -= f / df;
    }
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

// sum_n b_n/n x^n + w sum_n conj(b_n)/n y^n with x = e^{-2 pi t/Q}, y = e^{-2 pi/(t Q)}.
template <typename Coeff>
std::complex<double> fe_sum(const Coeff& coeff, std::int64_t nmax, double Q, double t, std::complex<double> w) {
  const double x = std::exp(-kTwoPi * t / Q);
  const double y = std::exp(-kTwoPi / (t * Q));
  double xn = 1, yn = 1;
  std::complex<double> s1 = 0, s2 = 0;
  for (std::int64_t n = 1; n <= nmax; ++n) {
    xn *= x;
    yn *= y;
    const std::complex<double> b = coeff(n);
    if (b == 0.0) continue;
    s1 += b * (xn / n);
    s2 += std::conj(b) * (yn / n);
  }
  return s1 + w * s2;
}

double tail_majorant(double Q, std::int64_t nmax) {
  const double x = std::exp(-kTwoPi / Q);
  return 2 * 2 * std::pow(x, static_cast<double>(nmax + 1)) / (1 - x);
}

}  // namespace

std::int64_t series_cutoff(double Q, double eps) {
  const double x = std::exp(-kTwoPi / Q);
  return static_cast<std::int64_t>(std::ceil(Q / kTwoPi * std::log(2 / (eps * (1 - x)))));
}

LSeries::LSeries(CurveData curve, TableProvider provider)
    : curve_(std::move(curve)), provider_(provider ? std::move(provider) : TableProvider(an_table)) {}

std::shared_ptr<const CoefficientTable> LSeries::table(std::int64_t nmax) const {
  std::lock_guard lock(mutex_);
  if (!table_ || table_->nmax() < nmax) {
    const std::int64_t target = std::max(nmax, table_ ? table_->nmax() * 3 / 2 : nmax);
    table_ = std::make_shared<const CoefficientTable>(provider_(curve_, target));
  }
  return table_;
}

double LSeries::omega() const {
  {
    std::lock_guard lock(mutex_);
    if (omega_) return *omega_;
  }
  const auto inv = invariants(curve_);
  const Real b2(inv.b2), b4(inv.b4), b6(inv.b6);
  const Real pi = boost::math::constants::pi<Real>();
  Real omega;
  if (inv.discriminant > 0) {
    const auto e = real_roots(b2, b4, b6, true);
    omega = 2 * pi / agm(sqrt(e[0] - e[2]), sqrt(e[0] - e[1]));
  } else {
    const Real e1 = real_roots(b2, b4, b6, false)[0];
    const Real a = 3 * e1 + b2 / 4;
    const Real b = sqrt(3 * e1 * e1 + b2 / 2 * e1 + b4 / 2);
    omega = 2 * pi / agm(2 * sqrt(b), sqrt(2 * b + a));
  }
  std::lock_guard lock(mutex_);
  omega_ = omega.convert_to<double>();
  return *omega_;
}

int LSeries::root_number() const {
  if (curve_.root_number) return *curve_.root_number;
  {
    std::lock_guard lock(mutex_);
    if (root_number_) return *root_number_;
  }
  const double sqrtN = std::sqrt(static_cast<double>(curve_.conductor));
  const auto tab = table(series_cutoff(sqrtN * 1.3, 1e-14));
  auto coeff = [&](std::int64_t n) { return std::complex<double>(static_cast<double>(tab->at(n))); };
  int found = 0;
  for (int w : {1, -1}) {
    const auto f1 = fe_sum(coeff, tab->nmax(), sqrtN, 1.1, w);
    const auto f2 = fe_sum(coeff, tab->nmax(), sqrtN, 1.3, w);
    if (std::abs(f1 - f2) < 1e-8) {
      if (found != 0) throw Error(ErrorKind::Inconclusive, "both signs fit the functional equation");
      found = w;
    }
  }
  if (found == 0) throw Error(ErrorKind::Inconclusive, "no sign fits the functional equation for " + curve_.label);
  std::lock_guard lock(mutex_);
  root_number_ = found;
  return found;
}

double LSeries::l1() const {
  if (root_number() == -1) throw Error(ErrorKind::RankPositive, curve_.label + " has root number -1");
  {
    std::lock_guard lock(mutex_);
    if (l1_) return *l1_;
  }
  const double sqrtN = std::sqrt(static_cast<double>(curve_.conductor));
  const auto tab = table(series_cutoff(sqrtN, kSeriesEps));
  const std::int64_t nmax = series_cutoff(sqrtN, kSeriesEps);
  const double x = std::exp(-kTwoPi / sqrtN);
  double xn = 1, sum = 0;
  for (std::int64_t n = 1; n <= nmax; ++n) {
    xn *= x;
    sum += static_cast<double>(tab->at(n)) / n * xn;
  }
  std::lock_guard lock(mutex_);
  l1_ = 2 * sum;
  return *l1_;
}

Rational LSeries::lratio() const {
  const double value = l1() / omega();
  if (std::abs(value) < 1e-8) throw Error(ErrorKind::RankPositive, curve_.label + " has L(E,1) = 0");
  for (std::int64_t d = 1; d <= 120; ++d) {
    const double n = std::round(value * d);
    if (std::abs(value - n / d) < 1e-8 * std::max(1.0, std::abs(value))) {
      const Rational r(static_cast<std::int64_t>(n), d);
      if (curve_.lratio_hint && *curve_.lratio_hint != r) {
        throw Error(ErrorKind::Mismatch, curve_.label + ": computed L-ratio " + to_string(r) +
                                             " differs from dataset value " + to_string(*curve_.lratio_hint));
      }
      return r;
    }
  }
  throw Error(ErrorKind::RecognitionFailed, curve_.label + ": L-ratio " + std::to_string(value) + " not recognized");
}

std::complex<double> LSeries::twisted(const DirichletCharacter& chi, double* fe_residual) const {
  const std::int64_t c = chi.conductor();
  if (std::gcd(c, curve_.conductor) != 1) {
    throw Error(ErrorKind::ConductorClash, "character conductor " + std::to_string(c) +
                                               " shares a factor with N = " + std::to_string(curve_.conductor));
  }
  const double Q = static_cast<double>(c) * std::sqrt(static_cast<double>(curve_.conductor));
  const std::complex<double> tau = chi.gauss_sum();
  const std::complex<double> w =
      static_cast<double>(root_number()) * chi.value(curve_.conductor) * tau * tau / static_cast<double>(c);
  const std::int64_t nmax = series_cutoff(Q * 1.25, kSeriesEps);
  const auto tab = table(nmax);
  std::vector<std::complex<double>> values(static_cast<std::size_t>(c));
  for (std::int64_t a = 0; a < c; ++a) values[a] = chi.value(a);
  auto coeff = [&](std::int64_t n) { return values[n % c] * static_cast<double>(tab->at(n)); };
  const auto at_one = fe_sum(coeff, series_cutoff(Q, kSeriesEps), Q, 1.0, w);
  if (fe_residual) *fe_residual = std::abs(at_one - fe_sum(coeff, nmax, Q, 1.25, w));
  return at_one;
}

std::complex<double> LSeries::normalized(const DirichletCharacter& chi) const {
  return twisted(chi) * static_cast<double>(chi.conductor()) / (chi.gauss_sum() * omega());
}

LValueReport LSeries::algebraic_twisted(const DirichletCharacter& chi) const {
  LValueReport report;
  report.label = curve_.label;
  report.character = chi.id();
  report.analytic = twisted(chi, &report.fe_residual);
  if (report.fe_residual > 1e-7) {
    throw Error(ErrorKind::Mismatch, "functional equation of the twist by " + chi.id() + " fails (residual " +
                                         std::to_string(report.fe_residual) + ")");
  }
  report.period = omega();
  const std::int64_t q = chi.order();
  const double Q = static_cast<double>(chi.conductor()) * std::sqrt(static_cast<double>(curve_.conductor));
  report.terms = series_cutoff(Q, kSeriesEps);
  report.tail_bound = tail_majorant(Q, report.terms);
  report.twisted_level = curve_.conductor * chi.conductor() * chi.conductor();
  report.twisted_sign = root_number();
  std::map<std::int64_t, std::complex<double>> values;
  for (std::int64_t b = 1; b < q; ++b) {
    const auto conj = chi.conjugate(b);
    const auto analytic = b == 1 ? report.analytic : twisted(conj);
    values[b] = analytic * static_cast<double>(chi.conductor()) / (conj.gauss_sum() * report.period);
  }
  report.algebraic = recognize(q, values);
  return report;
}

LValueReport LSeries::algebraic_twisted_clash(const DirichletCharacter& chi) const {
  if (chi.order() != 2) {
    throw Error(ErrorKind::InvalidArgument, "the clash path handles quadratic characters only");
  }
  const std::int64_t c = chi.conductor();
  const std::int64_t N = curve_.conductor;
  const std::int64_t bound = N / std::gcd(N, c * c) * c * c;
  const double tmax = 1.3;
  const std::int64_t nmax = series_cutoff(std::sqrt(static_cast<double>(bound)) * tmax, kSeriesEps);
  const auto tab = table(nmax);
  auto coeff = [&](std::int64_t n) {
    return std::complex<double>(chi.value(n).real() * static_cast<double>(tab->at(n)));
  };
  for (std::int64_t level : divisors(bound)) {
    const double Q = std::sqrt(static_cast<double>(level));
    const std::int64_t terms = series_cutoff(Q * tmax, kSeriesEps);
    for (int w : {1, -1}) {
      const auto f1 = fe_sum(coeff, terms, Q, 1.1, w);
      const auto f2 = fe_sum(coeff, terms, Q, tmax, w);
      if (std::abs(f1 - f2) >= 1e-8) continue;
      LValueReport report;
      report.label = curve_.label;
      report.character = chi.id();
      report.analytic = fe_sum(coeff, terms, Q, 1.0, w);
      report.fe_residual = std::abs(f1 - f2);
      report.period = omega();
      report.terms = terms;
      report.tail_bound = tail_majorant(Q, terms);
      report.twisted_level = level;
      report.twisted_sign = w;
      const auto normalized = report.analytic * static_cast<double>(c) / (chi.gauss_sum() * report.period);
      report.algebraic = recognize(2, {{1, normalized}});
      return report;
    }
  }
  throw Error(ErrorKind::Inconclusive, "no level dividing " + std::to_string(bound) + " fits the twist of " +
                                           curve_.label + " by " + chi.id());
}

}  // namespace lcongr
