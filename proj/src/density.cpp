#include "lcongr/density.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <thread>

#include "lcongr/ec_core.hpp"
#include "lcongr/errors.hpp"

namespace lcongr {

namespace {

// Full twisted L-values at conductor p need about 13 p sqrt(N) coefficients.
constexpr std::int64_t kSpotLimit = 5000;

std::array<Rational, 3> as_triple(const DensityProfile& p) { return {p.at(0), p.at(1), p.at(2)}; }

Prediction finish(Prediction out) {
  out.triple = as_triple(out.profile);
  const auto& all = density_triples();
  if (std::find(all.begin(), all.end(), out.triple) == all.end()) {
    throw Error(ErrorKind::Mismatch, "predicted triple (" + to_string(out.triple[0]) + ", " + to_string(out.triple[1]) +
                                         ", " + to_string(out.triple[2]) + ") is not an admissible triple");
  }
  return out;
}

DensityProfile point_mass(std::int64_t q) {
  DensityProfile p;
  p.q = q;
  p.values.assign(static_cast<std::size_t>(q), Rational(0));
  p.values[0] = Rational(1);
  return p;
}

}  // namespace

std::int64_t sweep_residue(const Rational& lratio, std::int64_t points, std::int64_t q) {
  const int v = ord(lratio, q);
  if (v > 0) return 0;
  if (v == 0) return reduce_rational(-lratio * points, q, q);
  if (v == -1) {
    if (points % q != 0) {
      throw Error(ErrorKind::Mismatch, "#E(F_p) = " + std::to_string(points) + " is prime to " + std::to_string(q) +
                                           " although ord L(E) = -1");
    }
    return reduce_rational(-(lratio * q) * (points / q), q, q);
  }
  throw Error(ErrorKind::BoundViolated, "ord_" + std::to_string(q) + " L(E) = " + std::to_string(v) + " < -1");
}

std::vector<std::int64_t> eligible_primes(std::int64_t conductor, std::int64_t q, std::int64_t limit) {
  std::vector<std::int64_t> out;
  for (std::int64_t p : primes_below(limit)) {
    if (p > 2 && p % q == 1 && conductor % p != 0) out.push_back(p);
  }
  return out;
}

SweepResult sweep(const LSeries& series, std::int64_t q, std::int64_t limit, bool keep_residues, unsigned workers) {
  const CurveData& E = series.curve();
  if (E.manin_c0 % q == 0) throw Error(ErrorKind::HypothesisFailed, E.label + ": q divides c0");
  if (limit > 10'000'000) throw Error(ErrorKind::InvalidArgument, "sweep limit above 10^7");
  const Rational l = series.lratio();
  if (ord(l, q) < -1) throw Error(ErrorKind::BoundViolated, E.label + ": ord_q L(E) < -1");

  const auto primes = eligible_primes(E.conductor, q, limit);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  // Interleaved partition balances the O(p) point counts.
  std::vector<std::future<std::vector<std::int64_t>>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      std::vector<std::int64_t> res(primes.size(), -1);
      for (std::size_t i = w; i < primes.size(); i += workers) res[i] = sweep_residue(l, count_points(E, primes[i]), q);
      return res;
    }));
  }
  std::vector<std::int64_t> residues(primes.size(), -1);
  for (auto& j : jobs) {
    const auto part = j.get();
    for (std::size_t i = 0; i < part.size(); ++i) {
      if (part[i] >= 0) residues[i] = part[i];
    }
  }

  SweepResult out;
  out.label = E.label;
  out.q = q;
  out.limit = limit;
  out.counts.assign(static_cast<std::size_t>(q), 0);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    ++out.counts[static_cast<std::size_t>(residues[i])];
    if (keep_residues) out.residues.emplace_back(primes[i], residues[i]);
  }
  out.eligible = static_cast<std::int64_t>(primes.size());
  out.empirical.q = q;
  for (std::int64_t c : out.counts) {
    out.empirical.values.push_back(out.eligible == 0 ? Rational(0) : Rational(c, out.eligible));
  }
  return out;
}

void attach_prediction(SweepResult& result, const DensityProfile& predicted) {
  if (predicted.q != result.q) throw Error(ErrorKind::InvalidArgument, "prediction is for a different q");
  result.predicted = predicted;
  result.max_deviation = 0;
  for (std::int64_t l = 0; l < result.q; ++l) {
    const Rational d = result.empirical.at(l) - predicted.at(l);
    result.max_deviation =
        std::max(result.max_deviation, std::abs(static_cast<double>(d.numerator()) / static_cast<double>(d.denominator())));
  }
}

const std::vector<std::array<Rational, 3>>& density_triples() {
  static const std::vector<std::array<Rational, 3>> triples = [] {
    const std::vector<std::array<const char*, 3>> raw = {
        {"1", "0", "0"},     {"3/8", "3/8", "1/4"}, {"3/8", "1/4", "3/8"}, {"1/2", "1/2", "0"},
        {"1/2", "0", "1/2"}, {"1/8", "3/4", "1/8"}, {"1/8", "1/8", "3/4"}, {"1/4", "1/2", "1/4"},
        {"1/4", "1/4", "1/2"}, {"5/9", "2/9", "2/9"}, {"1/3", "2/3", "0"},  {"1/3", "0", "2/3"}};
    std::vector<std::array<Rational, 3>> out;
    for (const auto& t : raw) out.push_back({parse_rational(t[0]), parse_rational(t[1]), parse_rational(t[2])});
    return out;
  }();
  return triples;
}

Prediction predict_with_row(const Rational& lratio, const TableRow& row, int which) {
  Prediction out;
  out.route = which == 1 ? "table1" : "table2";
  out.image_label = row.label;
  out.profile = density_profile(row_slice(row, which), lratio);
  return finish(out);
}

std::vector<SpotCheck> spot_check(const LSeries& series, std::int64_t q, std::int64_t limit, std::int64_t count,
                                  std::uint64_t seed) {
  const CurveData& E = series.curve();
  std::vector<std::int64_t> primes = eligible_primes(E.conductor, q, std::min(limit, kSpotLimit));
  std::mt19937_64 rng(seed);
  std::shuffle(primes.begin(), primes.end(), rng);
  if (static_cast<std::int64_t>(primes.size()) > count) primes.resize(static_cast<std::size_t>(count));
  std::sort(primes.begin(), primes.end());
  const Rational l = series.lratio();
  std::vector<SpotCheck> out;
  for (std::int64_t p : primes) {
    const std::int64_t k = std::uniform_int_distribution<std::int64_t>(1, q - 1)(rng);
    const auto chi = DirichletCharacter::prime(p, q, k);
    SpotCheck s;
    s.p = p;
    s.character = chi.id();
    s.sweep = sweep_residue(l, count_points(E, p), q);
    s.observed = series.algebraic_twisted(chi).algebraic.reduce_mod_lambda();
    s.match = s.sweep == s.observed;
    out.push_back(s);
  }
  return out;
}

Prediction predict(const LSeries& series, const GaloisTables& tables) {
  const CurveData& E = series.curve();
  if (E.manin_c0 % 3 == 0) throw Error(ErrorKind::HypothesisFailed, E.label + ": 3 divides c0");
  const Rational l = series.lratio();
  const int v = ord(l, 3);
  Prediction out;
  if (v > 0) {
    out.route = "valuation";
    out.profile = point_mass(3);
    return finish(out);
  }
  if (v < -1) throw Error(ErrorKind::BoundViolated, E.label + ": ord_3 L(E) < -1");
  if (v == 0 && torsion_order(E) % 3 == 0) {
    out.route = "torsion";
    out.profile = point_mass(3);
    return finish(out);
  }
  const int which = v == 0 ? 1 : 2;
  const auto& rows = which == 1 ? tables.table1 : tables.table2;
  const auto it = std::find_if(rows.begin(), rows.end(), [&](const TableRow& r) { return r.label == E.galois_image_3; });
  if (E.galois_image_3.empty() || it == rows.end()) {
    throw Error(ErrorKind::MissingImageData, E.label + ": no " + (which == 1 ? "mod-3" : "3-adic") +
                                                 " image row for '" + E.galois_image_3 + "'");
  }
  return predict_with_row(l, *it, which);
}

}  // namespace lcongr
