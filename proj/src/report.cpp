#include "lcongr/report.hpp"

#include <cstdio>
#include <cstdlib>

#include "lcongr/errors.hpp"

namespace lcongr {

namespace {

template <typename T>
Json opt(const std::optional<T>& x) {
  if (!x) return nullptr;
  if constexpr (std::is_same_v<T, Rational> || std::is_same_v<T, CycNumber> || std::is_same_v<T, Mat2>) {
    return to_json(*x);
  } else {
    return *x;
  }
}

Json complex_json(std::complex<double> z) { return Json::array({number(z.real()), number(z.imag())}); }

}  // namespace

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0 ? 0.0 : r;
}

Json to_json(const Rational& x) { return to_string(x); }
Json to_json(const BigRational& x) { return x.str(); }
Json to_json(const CycNumber& x) { return x.to_string(); }

Json to_json(const DensityProfile& p) {
  Json values = Json::array();
  for (const Rational& v : p.values) values.push_back(to_json(v));
  return Json{{"q", p.q}, {"values", values}};
}

Json to_json(const std::array<Rational, 3>& t) { return Json::array({to_json(t[0]), to_json(t[1]), to_json(t[2])}); }

Json to_json(const Mat2& m) { return Json::array({Json::array({m.a, m.b}), Json::array({m.c, m.d})}); }

Json to_json(const LValueReport& r) {
  return Json{{"curve", r.label},
              {"character", r.character},
              {"analytic", complex_json(r.analytic)},
              {"period", number(r.period)},
              {"algebraic", to_json(r.algebraic)},
              {"terms", r.terms},
              {"tail_bound", number(r.tail_bound)},
              {"fe_residual", number(r.fe_residual)},
              {"twisted_level", r.twisted_level},
              {"twisted_sign", r.twisted_sign}};
}

Json to_json(const SymbolValue& r) {
  return Json{{"curve", r.label},          {"a", r.a},        {"m", r.m},
              {"raw", complex_json(r.raw)}, {"normalized", number(r.normalized)},
              {"plus", r.plus},            {"residual", number(r.residual)}};
}

Json to_json(const HeckeReport& r) {
  return Json{{"n", r.n},
              {"a_n", r.an},
              {"sigma1", r.sigma1},
              {"sigma0_even", r.sigma0_even},
              {"points_f2", r.points_f2},
              {"lhs", to_json(r.lhs)},
              {"lhs_integral", r.lhs_integral},
              {"rhs", r.rhs},
              {"rhs_numeric", number(r.rhs_numeric)},
              {"max_residual", number(r.max_residual)},
              {"holds", r.holds}};
}

Json to_json(const CongruenceReport& r) {
  return Json{{"curve", r.label},
              {"character", r.character},
              {"q", r.q},
              {"n", r.n},
              {"c0_lvalue", to_json(r.lvalue)},
              {"lhs_residue", r.lhs_residue},
              {"rhs_value", to_json(r.rhs_value)},
              {"rhs_residue", r.rhs_residue},
              {"epsilon", r.epsilon},
              {"lhs_trace_mod9", opt(r.lhs_trace_mod9)},
              {"rhs_negated_mod9", opt(r.rhs_negated_mod9)},
              {"match", r.match}};
}

Json to_json(const ParityReport& r) {
  return Json{{"curve", r.label},
              {"kind", r.kind},
              {"character", r.character},
              {"lhs", to_json(r.lhs_value)},
              {"rhs", to_json(r.rhs_value)},
              {"lhs_mod2", r.lhs_mod2},
              {"rhs_mod2", r.rhs_mod2},
              {"epsilon_mod2", r.epsilon_mod2},
              {"match", r.match}};
}

Json to_json(const ValuationReport& r) {
  return Json{{"curve", r.label},
              {"q", r.q},
              {"ord", r.ord},
              {"has_q_isogeny", opt(r.has_q_isogeny)},
              {"lower_bound", r.lower_bound},
              {"bound_satisfied", r.bound_satisfied}};
}

Json to_json(const UnitReport& r) {
  return Json{{"curve", r.label},
              {"character", r.character},
              {"q", r.q},
              {"p", r.p},
              {"lvalue", to_json(r.lvalue)},
              {"zeta", to_json(r.zeta)},
              {"real_part_check", r.real_part_check},
              {"norm", to_json(r.norm)},
              {"norm_plus", to_json(r.norm_plus)},
              {"expected_quotient", opt(r.expected_quotient)},
              {"quotient_match", opt(r.quotient_match)},
              {"points", r.points},
              {"predicted_residue", r.predicted_residue},
              {"observed_residue", r.observed_residue},
              {"predicted_sign", opt(r.predicted_sign)},
              {"observed_sign", opt(r.observed_sign)},
              {"sign_from_norm_only", r.sign_from_norm_only},
              {"match", r.match}};
}

Json to_json(const Section5Row& r) {
  return Json{{"table", r.table},
              {"curve", r.label},
              {"character", r.character},
              {"expected", opt(r.expected)},
              {"computed", to_json(r.computed)},
              {"expected_points", opt(r.expected_points)},
              {"points", r.points},
              {"expected_quotient", opt(r.expected_quotient)},
              {"expected_residue", opt(r.expected_residue)},
              {"value_match", r.value_match},
              {"points_match", r.points_match},
              {"report", to_json(r.report)},
              {"error", r.error.empty() ? Json(nullptr) : Json(r.error)},
              {"ok", r.ok()}};
}

Json to_json(const RowCheck& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(f);
  return Json{{"label", r.label},
              {"image_size", r.image_size},
              {"expected_image_size", r.expected_image_size},
              {"g_size", r.g_size},
              {"delta", to_json(r.delta)},
              {"found_m", opt(r.found_m)},
              {"failures", failures},
              {"ok", r.ok()}};
}

Json to_json(const ConjugacyReport& r) {
  Json classes = Json::array();
  for (const auto& c : r.classes) {
    classes.push_back(Json{{"representative", to_json(c.representative)},
                           {"order", c.order},
                           {"cardinality", c.cardinality},
                           {"trace", c.trace},
                           {"family", c.family}});
  }
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(f);
  return Json{{"q", r.q},
              {"class_count", r.classes.size()},
              {"trace2", r.trace2},
              {"trace_minus2", r.trace_minus2},
              {"split", r.split},
              {"nonsplit", r.nonsplit},
              {"classes", classes},
              {"failures", failures},
              {"ok", r.ok()}};
}

Json to_json(const SweepResult& r) {
  return Json{{"curve", r.label},
              {"q", r.q},
              {"limit", r.limit},
              {"counts", r.counts},
              {"eligible", r.eligible},
              {"empirical", to_json(r.empirical)},
              {"predicted", r.predicted ? to_json(*r.predicted) : Json(nullptr)},
              {"max_deviation", r.predicted ? number(r.max_deviation) : Json(nullptr)}};
}

Json to_json(const SpotCheck& s) {
  return Json{{"p", s.p}, {"character", s.character}, {"sweep", s.sweep}, {"observed", s.observed}, {"match", s.match}};
}

Json to_json(const Prediction& p) {
  return Json{{"route", p.route},
              {"image", p.image_label.empty() ? Json(nullptr) : Json(p.image_label)},
              {"profile", to_json(p.profile)},
              {"triple", to_json(p.triple)}};
}

Json to_json(const GcdEstimate& g) {
  Json sample = Json::array();
  for (const auto& [p, n] : g.sample) sample.push_back(Json::array({p, n.str()}));
  return Json{{"curve", g.label},
              {"q", g.q},
              {"gcd", g.gcd},
              {"components", g.components},
              {"nonzero", g.nonzero},
              {"stable", g.stable},
              {"empirical", g.empirical},
              {"sample", sample}};
}

Json to_json(const ResiduePrediction& r) {
  return Json{{"p", r.p},
              {"points", r.points},
              {"split_in_K", r.split_in_K},
              {"case", r.case_index},
              {"residue", r.residue},
              {"certified", r.certified}};
}

Json to_json(const KNRecord& r) {
  return Json{{"curve", r.label},
              {"character", r.character},
              {"p", r.p},
              {"chi_N", to_json(r.chi_n)},
              {"lvalue", to_json(r.lvalue)},
              {"l_plus", to_json(r.lplus)},
              {"norm_plus", r.norm_plus.str()},
              {"observed_residue", r.observed_residue},
              {"congruence_residue", r.congruence_residue},
              {"prediction", to_json(r.prediction)},
              {"match", r.match}};
}

Json to_json(const DeltaPrime& d) {
  return Json{{"curve", d.label},
              {"limit", d.limit},
              {"counts", d.counts},
              {"eligible", d.eligible},
              {"empirical", to_json(d.empirical)},
              {"expected", to_json(d.expected)},
              {"max_deviation", number(d.max_deviation)},
              {"sl2_count", to_json(d.sl2_count)},
              {"sl2_deviation", number(d.sl2_deviation)},
              {"certified", d.certified}};
}

Json error_json(const std::exception& e) {
  Json j{{"error", e.what()}};
  if (const auto* err = dynamic_cast<const Error*>(&e)) j["kind"] = std::string(to_string(err->kind()));
  return j;
}

std::string dump(const Json& j) { return j.dump(2); }

}  // namespace lcongr
