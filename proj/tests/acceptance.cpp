// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lcongr/checks.hpp"
#include "lcongr/dataset.hpp"
#include "lcongr/density.hpp"
#include "lcongr/errors.hpp"
#include "lcongr/kn.hpp"
#include "lcongr/matgrp.hpp"
#include "lcongr/modsym.hpp"

using namespace lcongr;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

const Dataset& corpus() {
  static const Dataset data = ingest_dataset(default_dataset_path());
  return data;
}

const GaloisTables& tables() {
  static const GaloisTables t = load_galois_tables(default_data_dir() / "galois_images.json");
  return t;
}

const std::vector<Section5Row>& section5() {
  static const std::vector<Section5Row> rows = run_section5(corpus(), default_section5_path());
  return rows;
}

std::string join(const std::vector<std::int64_t>& xs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
  return out.str();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1e", x);
  return buf;
}

std::string triple_text(const std::array<Rational, 3>& t) {
  return "(" + to_string(t[0]) + "," + to_string(t[1]) + "," + to_string(t[2]) + ")";
}

Verdict table_rows(const std::string& table, const std::vector<std::int64_t>& points, double budget, double elapsed_before) {
  const auto start = Clock::now();
  const auto& rows = section5();
  std::vector<std::int64_t> got;
  int ok = 0, total = 0;
  std::string bad;
  for (const Section5Row& r : rows) {
    if (r.table != table) continue;
    ++total;
    got.push_back(r.points);
    if (r.ok() && r.value_match && r.points_match) ++ok;
    else bad += " " + r.label;
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count() + elapsed_before;
  Verdict v;
  v.pass = ok == total && total == static_cast<int>(points.size()) && got == points && secs < budget;
  v.detail = std::to_string(ok) + "/" + std::to_string(total) + " rows, #E = " + join(got) +
             (bad.empty() ? "" : ", failing:" + bad);
  return v;
}

double section5_seconds = 0;

Verdict criterion1() {
  const auto start = Clock::now();
  section5();
  section5_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return table_rows("cubic", {11, 7, 10, 8, 7, 11, 7, 7, 11}, 300, section5_seconds);
}

Verdict criterion2() { return table_rows("quintic", {9, 16, 16, 8, 9, 13, 17, 8, 9, 7}, 600, section5_seconds); }

Verdict criterion3() {
  std::int64_t checked = 0, failures = 0, skipped = 0;
  std::string first_failure;
  for (const CurveData& E : corpus().curves()) {
    const LSeries L(E);
    const ModularSymbols M(L);
    for (std::int64_t q : {3, 5}) {
      if (E.manin_c0 % q == 0) {
        ++skipped;
        continue;
      }
      for (std::int64_t p : eligible_primes(E.conductor, q, 101)) {
        for (std::int64_t k = 1; k < q; ++k) {
          const auto chi = DirichletCharacter::prime(p, q, k);
          ++checked;
          try {
            if (!M.congruence_check(chi).match) {
              ++failures;
              if (first_failure.empty()) first_failure = E.label + " " + chi.id();
            }
          } catch (const Error& e) {
            ++failures;
            if (first_failure.empty()) first_failure = E.label + " " + chi.id() + ": " + e.what();
          }
        }
      }
    }
  }
  Verdict v;
  v.pass = failures == 0 && checked > 0;
  v.detail = std::to_string(checked) + " (curve, character) pairs, " + std::to_string(failures) + " failures, " +
             std::to_string(skipped) + " (curve, q) skipped for q | c0" +
             (first_failure.empty() ? "" : ", first: " + first_failure);
  return v;
}

Verdict criterion4() {
  const LSeries L(corpus().at("11a1"));
  const ModularSymbols M(L);
  int ok = 0, total = 0;
  double worst = 0;
  for (const char* code : {"7:3:chi(3)=z2", "13:3:k=1"}) {
    const auto chi = parse_character(code);
    ++total;
    const CycNumber birch = M.birch_sum(chi);
    const CycNumber direct = L.algebraic_twisted(chi).algebraic.scaled(BigRational(L.curve().manin_c0));
    ok += birch == direct;
    for (std::int64_t m : {7, 13}) {
      for (std::int64_t a = 1; a < m; ++a) worst = std::max(worst, M.symbol(a, m).residual);
    }
  }
  for (std::int64_t n : {3, 7, 13}) {
    ++total;
    const HeckeReport h = M.hecke_identity(n);
    ok += h.holds && h.lhs == Rational(h.rhs);
    worst = std::max(worst, h.max_residual);
  }
  Verdict v;
  v.pass = ok == total && worst < 1e-4;
  v.detail = std::to_string(ok) + "/" + std::to_string(total) + " identities exact, max residual " + sci(worst);
  return v;
}

Verdict table_check(int which, std::size_t expected_rows, double budget) {
  const auto start = Clock::now();
  const auto checks = verify_table(tables(), which);
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::size_t ok = 0;
  std::string bad;
  for (const RowCheck& r : checks) {
    if (r.ok()) ++ok;
    else bad += " " + r.label;
  }
  Verdict v;
  v.pass = ok == expected_rows && checks.size() == expected_rows && secs < budget;
  v.detail = std::to_string(ok) + "/" + std::to_string(checks.size()) + " rows in " + fmt(secs) + " s" +
             (bad.empty() ? "" : ", failing:" + bad);
  return v;
}

Verdict criterion6() {
  Verdict v = table_check(2, 21, 120);
  for (const char* na : {"9.72.0.1", "9.72.0.5"}) {
    const TableRow* row = tables().find(na);
    const bool none = row && !verify_row(*row, 2).found_m.has_value();
    v.pass = v.pass && none;
    v.detail += std::string(", ") + na + (none ? " has no M" : " M FOUND");
  }
  return v;
}

Verdict criterion7() {
  int ok = 0;
  std::string detail;
  for (std::int64_t q : {3, 5, 7, 11, 13}) {
    const ConjugacyReport r = sl2_conjugacy_table(q);
    const auto expected = 3 + 3 + (q - 3) / 2 + (q - 1) / 2;
    const bool good = r.ok() && static_cast<std::int64_t>(r.classes.size()) == expected;
    ok += good;
    detail += (detail.empty() ? "" : ", ") + std::string("q=") + std::to_string(q) + ": " +
              std::to_string(r.classes.size()) + " classes";
  }
  return {ok == 5, detail};
}

Verdict criterion8() {
  const auto& allowed = density_triples();
  int predicted = 0, outside = 0, missing = 0, hypothesis = 0;
  for (const CurveData& E : corpus().curves()) {
    const LSeries L(E);
    if (L.root_number() == -1) continue;
    try {
      const Prediction p = predict(L, tables());
      ++predicted;
      if (std::find(allowed.begin(), allowed.end(), p.triple) == allowed.end()) ++outside;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::MissingImageData) ++missing;
      else if (e.kind() == ErrorKind::HypothesisFailed) ++hypothesis;
      else ++outside;
    }
  }
  using T = std::array<Rational, 3>;
  const std::pair<const char*, T> named[] = {
      {"11a1", {Rational(3, 8), Rational(3, 8), Rational(1, 4)}},
      {"20a1", {Rational(5, 9), Rational(2, 9), Rational(2, 9)}},
      {"14a1", {Rational(1), Rational(0), Rational(0)}},
      {"50b4", {Rational(1), Rational(0), Rational(0)}},
  };
  int named_ok = 0;
  std::string detail;
  for (const auto& [label, expected] : named) {
    const T got = predict(LSeries(corpus().at(label)), tables()).triple;
    named_ok += got == expected;
    detail += std::string(label) + " " + triple_text(got) + ", ";
  }
  Verdict v;
  v.pass = outside == 0 && named_ok == 4;
  v.detail = detail + std::to_string(predicted) + " predicted, " + std::to_string(outside) + " outside the list, " +
             std::to_string(missing) + " without image data, " + std::to_string(hypothesis) + " with 3 | c0";
  return v;
}

Verdict criterion9() {
  bool pass = true;
  std::string detail;
  for (const char* label : {"11a1", "20a1", "14a1"}) {
    const auto start = Clock::now();
    const LSeries L(corpus().at(label));
    SweepResult s = sweep(L, 3, 50'000);
    attach_prediction(s, predict(L, tables()).profile);
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    pass = pass && s.max_deviation < 0.02 && secs < 600;
    detail += (detail.empty() ? "" : ", ") + std::string(label) + " max dev " + fmt(s.max_deviation) + " over " +
              std::to_string(s.eligible) + " primes";
  }
  return {pass, detail};
}

Verdict criterion10() {
  bool pass = true;
  std::string detail;
  const std::pair<const char*, std::int64_t> gcds[] = {{"11a1", 5}, {"15a1", 4}, {"17a1", 4}};
  std::int64_t records = 0, mismatches = 0;
  for (const auto& [label, expected] : gcds) {
    const LSeries L(corpus().at(label));
    const GcdEstimate g = estimate_gcd(L, 3, 20);
    const bool good = g.gcd == expected && g.stable;
    pass = pass && good;
    detail += std::string(label) + " gcd " + std::to_string(g.gcd) + (good ? "" : " (expected " + std::to_string(expected) + ")") + ", ";
    for (std::int64_t p : eligible_primes(L.curve().conductor, 3, 501)) {
      ++records;
      try {
        if (!kn_record(L, p, g.gcd).match) ++mismatches;
      } catch (const Error&) {
        ++mismatches;
      }
    }
  }
  pass = pass && mismatches == 0;
  detail += std::to_string(records) + " residues p <= 500, " + std::to_string(mismatches) + " mismatches";
  for (const char* label : {"11a1", "15a1"}) {
    const DeltaPrime d = delta_prime(corpus().at(label), 50'000);
    pass = pass && d.max_deviation < 0.02;
    detail += std::string(", ") + label + " delta' dev " + fmt(d.max_deviation) + " from (9,15,1)/24 [SL2 count (9,14,1)/24: " +
              fmt(d.sl2_deviation) + "]";
  }
  return {pass, detail};
}

Verdict criterion11() {
  int checked = 0, violations = 0;
  for (const CurveData& E : corpus().curves()) {
    const LSeries L(E);
    if (L.root_number() == -1) continue;
    for (std::int64_t q : {3, 5, 7}) {
      try {
        const ValuationReport r = valuation_check(L, q);
        ++checked;
        if (!r.bound_satisfied || r.ord < -1 || (E.has_no_isogeny(q) && r.ord < 0)) ++violations;
      } catch (const Error&) {
        ++violations;
      }
    }
  }
  const ValuationReport boundary = valuation_check(LSeries(corpus().at("11a1")), 5);
  bool c0_cases = true;
  std::string c0_detail;
  for (const char* label : {"27a3", "27a4", "54a3"}) {
    const ValuationReport r = valuation_check(LSeries(corpus().at(label)), 3);
    c0_cases = c0_cases && r.bound_satisfied && corpus().at(label).manin_c0 == 3;
    c0_detail += std::string(" ") + label + ":" + std::to_string(r.ord);
  }
  Verdict v;
  v.pass = violations == 0 && boundary.ord == -1 && c0_cases;
  v.detail = std::to_string(checked) + " bounds, " + std::to_string(violations) + " violations, 11a1 ord_5 = " +
             std::to_string(boundary.ord) + ", ord_3(c0 L):" + c0_detail;
  return v;
}

Verdict criterion12() {
  const LSeries L(corpus().at("11a1"));
  const HeckeReport h = ModularSymbols(L).hecke_identity(11, true);
  const LValueReport clash = LSeries(corpus().at("50b1")).algebraic_twisted_clash(DirichletCharacter::quadratic(5));
  Verdict v;
  v.pass = !h.holds && !clash.algebraic.is_integral();
  v.detail = "11a1 n=11: lhs " + to_string(h.lhs) + " vs rhs " + std::to_string(h.rhs) + (h.holds ? " (holds)" : " (fails)") +
             "; 50b1 quadratic 5: " + clash.algebraic.to_string() + (clash.algebraic.is_integral() ? " (integral)" : " (non-integral)");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"cubic twist table", criterion1},
      {"quintic twist table", criterion2},
      {"main congruence over the corpus, p <= 100", criterion3},
      {"modular symbol dual paths for 11a1", criterion4},
      {"mod-3 image table", [] { return table_check(1, 6, 1.0); }},
      {"3-adic image table", criterion6},
      {"SL2 conjugacy classes", criterion7},
      {"density triple membership", criterion8},
      {"empirical densities to 5e4", criterion9},
      {"gcd-normalized residues and delta'", criterion10},
      {"valuation bounds", criterion11},
      {"negative controls", criterion12},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    failed += !v.pass;
    std::printf("%s %2zu %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
