#include "lcongr/matgrp.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <future>
#include <set>

#include <json.hpp>

#include "lcongr/errors.hpp"

namespace lcongr {

namespace {

std::int64_t encode(const Mat2& m, std::int64_t n) { return ((m.a * n + m.b) * n + m.c) * n + m.d; }

void tally(SubgroupCensus& g) {
  g.census.clear();
  for (const Mat2& m : g.elements) ++g.census[{m.trace(g.modulus), m.det(g.modulus)}];
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::int64_t mult_order(const Mat2& m, std::int64_t n) {
  const Mat2 id{};
  Mat2 x = m.reduced(n);
  std::int64_t k = 1;
  while (x != id) {
    x = x.mul(m, n);
    ++k;
  }
  return k;
}

}  // namespace

Mat2 Mat2::mul(const Mat2& o, std::int64_t n) const {
  return {mod(a * o.a + b * o.c, n), mod(a * o.b + b * o.d, n), mod(c * o.a + d * o.c, n), mod(c * o.b + d * o.d, n)};
}

Mat2 Mat2::inverse(std::int64_t n) const {
  const std::int64_t di = inv_mod(det(n), n);
  return Mat2{d, -b, -c, a}.reduced(n).mul(Mat2{di, 0, 0, di}, n);
}

std::string Mat2::to_string() const {
  return "[[" + std::to_string(a) + "," + std::to_string(b) + "],[" + std::to_string(c) + "," + std::to_string(d) +
         "]]";
}

bool SubgroupCensus::contains(const Mat2& m) const {
  const Mat2 r = m.reduced(modulus);
  return std::find(elements.begin(), elements.end(), r) != elements.end();
}

Rational DensityProfile::total() const {
  Rational s(0);
  for (const Rational& v : values) s += v;
  return s;
}

std::int64_t prime_of_power(std::int64_t modulus) {
  if (modulus < 2) throw Error(ErrorKind::InvalidArgument, "modulus must be a prime power >= 2");
  const auto ps = prime_factors(modulus);
  if (ps.size() != 1) throw Error(ErrorKind::InvalidArgument, std::to_string(modulus) + " is not a prime power");
  return ps.front();
}

std::int64_t gl2_order(std::int64_t modulus) {
  const std::int64_t p = prime_of_power(modulus);
  const std::int64_t n4 = modulus * modulus * modulus * modulus;
  return n4 / (p * p * p) * (p - 1) * (p * p - 1);
}

SubgroupCensus generate(const std::vector<Mat2>& generators, std::int64_t modulus) {
  const std::int64_t p = prime_of_power(modulus);
  SubgroupCensus g;
  g.modulus = modulus;
  for (const Mat2& m : generators) {
    const Mat2 r = m.reduced(modulus);
    if (r.det(p) == 0) throw Error(ErrorKind::NotInvertible, "generator " + r.to_string() + " is not invertible");
    g.generators.push_back(r);
  }
  std::vector<bool> seen(static_cast<std::size_t>(ipow(modulus, 4)), false);
  std::deque<Mat2> queue{Mat2{}};
  seen[static_cast<std::size_t>(encode(Mat2{}, modulus))] = true;
  while (!queue.empty()) {
    const Mat2 x = queue.front();
    queue.pop_front();
    g.elements.push_back(x);
    for (const Mat2& s : g.generators) {
      const Mat2 y = x.mul(s, modulus);
      const auto key = static_cast<std::size_t>(encode(y, modulus));
      if (!seen[key]) {
        seen[key] = true;
        queue.push_back(y);
      }
    }
  }
  tally(g);
  return g;
}

SubgroupCensus det1_slice(const SubgroupCensus& g) {
  const std::int64_t p = prime_of_power(g.modulus);
  SubgroupCensus s;
  s.modulus = g.modulus;
  s.generators = g.generators;
  for (const Mat2& m : g.elements) {
    if (m.det(p) == 1) s.elements.push_back(m);
  }
  tally(s);
  return s;
}

SubgroupCensus lift_to_modulus(const SubgroupCensus& g, std::int64_t target) {
  const std::int64_t p = prime_of_power(g.modulus);
  if (prime_of_power(target) != p || target % g.modulus != 0) {
    throw Error(ErrorKind::InvalidArgument, "cannot lift from " + std::to_string(g.modulus) + " to " +
                                                std::to_string(target));
  }
  const std::int64_t k = target / g.modulus, n = g.modulus;
  SubgroupCensus out;
  out.modulus = target;
  out.generators = g.generators;
  out.elements.reserve(static_cast<std::size_t>(g.size() * ipow(k, 4)));
  for (const Mat2& m : g.elements) {
    for (std::int64_t i = 0; i < k; ++i)
      for (std::int64_t j = 0; j < k; ++j)
        for (std::int64_t u = 0; u < k; ++u)
          for (std::int64_t v = 0; v < k; ++v) out.elements.push_back({m.a + n * i, m.b + n * j, m.c + n * u, m.d + n * v});
  }
  tally(out);
  return out;
}

SubgroupCensus reduce_to_modulus(const SubgroupCensus& g, std::int64_t target) {
  if (g.modulus % target != 0 || prime_of_power(target) != prime_of_power(g.modulus)) {
    throw Error(ErrorKind::InvalidArgument, "cannot reduce from " + std::to_string(g.modulus) + " to " +
                                                std::to_string(target));
  }
  SubgroupCensus out;
  out.modulus = target;
  std::set<Mat2> seen;
  for (const Mat2& m : g.generators) out.generators.push_back(m.reduced(target));
  for (const Mat2& m : g.elements) {
    const Mat2 r = m.reduced(target);
    if (seen.insert(r).second) out.elements.push_back(r);
  }
  tally(out);
  return out;
}

SubgroupCensus at_modulus(const SubgroupCensus& g, std::int64_t target) {
  if (target == g.modulus) return g;
  if (target > g.modulus) return lift_to_modulus(g, target);
  return reduce_to_modulus(g, target);
}

DensityProfile density_profile(const SubgroupCensus& g, const Rational& lvalue) {
  const std::int64_t q = prime_of_power(g.modulus);
  DensityProfile out;
  out.q = q;
  out.values.assign(static_cast<std::size_t>(q), Rational(0));
  if (lvalue.numerator() == 0) throw Error(ErrorKind::NotUnit, "L-value is zero");
  const int v = ord(lvalue, q);
  if (v > 0) {
    out.values[0] = Rational(1);
    return out;
  }
  const std::int64_t qm = ipow(q, 1 - v);
  if (qm != g.modulus) {
    throw Error(ErrorKind::NotUnit, "valuation " + std::to_string(v) + " needs modulus " + std::to_string(qm) +
                                        ", group is at " + std::to_string(g.modulus));
  }
  if (g.elements.empty()) throw Error(ErrorKind::InvalidArgument, "empty group");
  const Rational unit = lvalue * Rational(ipow(q, -v));
  const std::int64_t linv = mul_mod(ipow(q, -v), inv_mod(reduce_rational(unit, q, qm), qm), qm);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(q), 0);
  for (const auto& [key, count] : g.census) {
    const auto [tr, det] = key;
    const std::int64_t t = mod(1 + det - tr, qm);
    for (std::int64_t lambda = 0; lambda < q; ++lambda) {
      if (mod(-lambda * linv, qm) == t) counts[static_cast<std::size_t>(lambda)] += count;
    }
  }
  for (std::int64_t lambda = 0; lambda < q; ++lambda) {
    out.values[static_cast<std::size_t>(lambda)] = Rational(counts[static_cast<std::size_t>(lambda)], g.size());
  }
  return out;
}

DensityProfile closed_form_density(std::int64_t q, const Rational& lvalue) {
  if (q < 3 || !is_prime(q)) throw Error(ErrorKind::InvalidArgument, "q must be an odd prime");
  if (lvalue.numerator() == 0 || ord(lvalue, q) != 0) throw Error(ErrorKind::NotUnit, "L-value must be a q-adic unit");
  const std::int64_t linv = inv_mod(reduce_rational(lvalue, q, q), q);
  DensityProfile out;
  out.q = q;
  for (std::int64_t lambda = 0; lambda < q; ++lambda) {
    const std::int64_t x = mul_mod(lambda, linv, q);
    const int symbol = legendre(x, q) * legendre(mod(x + 4, q), q);
    if (symbol == 1) {
      out.values.emplace_back(1, q - 1);
    } else if (symbol == 0) {
      out.values.emplace_back(q, q * q - 1);
    } else {
      out.values.emplace_back(1, q + 1);
    }
  }
  return out;
}

std::array<Rational, 3> ordered_triple(const DensityProfile& p, std::int64_t b) {
  if (p.q != 3) throw Error(ErrorKind::InvalidArgument, "ordered triples are for q = 3");
  return {p.at(0), p.at(-b), p.at(b)};
}

ConjugacyReport sl2_conjugacy_table(std::int64_t q) {
  if (q < 3 || q > 13 || !is_prime(q)) throw Error(ErrorKind::InvalidArgument, "q must be an odd prime <= 13");
  ConjugacyReport rep;
  rep.q = q;
  std::vector<Mat2> sl;
  for (std::int64_t a = 0; a < q; ++a)
    for (std::int64_t b = 0; b < q; ++b)
      for (std::int64_t c = 0; c < q; ++c)
        for (std::int64_t d = 0; d < q; ++d) {
          const Mat2 m{a, b, c, d};
          if (m.det(q) == 1) sl.push_back(m);
        }
  std::vector<Mat2> inverses;
  for (const Mat2& h : sl) inverses.push_back(h.inverse(q));
  std::vector<int> cls(static_cast<std::size_t>(ipow(q, 4)), -1);
  for (const Mat2& g : sl) {
    if (cls[static_cast<std::size_t>(encode(g, q))] >= 0) continue;
    const int id = static_cast<int>(rep.classes.size());
    std::int64_t size = 0;
    for (std::size_t i = 0; i < sl.size(); ++i) {
      const Mat2 x = sl[i].mul(g, q).mul(inverses[i], q);
      auto& slot = cls[static_cast<std::size_t>(encode(x, q))];
      if (slot < 0) {
        slot = id;
        ++size;
      }
    }
    ConjugacyClass c;
    c.representative = g;
    c.cardinality = size;
    c.order = mult_order(g, q);
    c.trace = g.trace(q);
    rep.classes.push_back(c);
  }

  auto fail = [&](const std::string& msg) { rep.failures.push_back("q=" + std::to_string(q) + ": " + msg); };
  const std::int64_t unipotent = (q * q - 1) / 2;
  std::int64_t total = 0;
  for (ConjugacyClass& c : rep.classes) {
    total += c.cardinality;
    const bool central = c.representative == Mat2{} || c.representative == Mat2{q - 1, 0, 0, q - 1};
    if (c.trace == 2 || c.trace == q - 2) {
      const bool plus = c.trace == 2;
      (plus ? rep.trace2 : rep.trace_minus2)++;
      c.family = central ? "central" : "unipotent";
      const std::int64_t want_card = central ? 1 : unipotent;
      const std::int64_t want_order = (plus ? 1 : 2) * (central ? 1 : q);
      if (c.cardinality != want_card || c.order != want_order) {
        fail("class of " + c.representative.to_string() + " has size " + std::to_string(c.cardinality) + ", order " +
             std::to_string(c.order));
      }
      continue;
    }
    const int disc = legendre(mod(c.trace * c.trace - 4, q), q);
    if (disc == 1) {
      c.family = "split";
      ++rep.split;
      std::int64_t x = 2;
      while (mod(x * x - c.trace * x + 1, q) != 0) ++x;
      std::int64_t order = 1;
      for (std::int64_t y = x; y != 1; y = mul_mod(y, x, q)) ++order;
      if (c.cardinality != q * (q + 1) || c.order != order) fail("split class of trace " + std::to_string(c.trace));
    } else {
      c.family = "nonsplit";
      ++rep.nonsplit;
      if (c.cardinality != q * (q - 1) || (q + 1) % c.order != 0 || c.order <= 2) {
        fail("nonsplit class of trace " + std::to_string(c.trace));
      }
    }
  }
  if (rep.trace2 != 3) fail("expected 3 classes of trace 2");
  if (rep.trace_minus2 != 3) fail("expected 3 classes of trace q - 2");
  if (rep.split != (q - 3) / 2) fail("expected (q - 3)/2 split classes");
  if (rep.nonsplit != (q - 1) / 2) fail("expected (q - 1)/2 nonsplit classes");
  if (total != (q - 1) * q * (q + 1)) fail("class sizes do not add up to #SL(2, q)");
  // Representatives [[+-1, z], [0, +-1]] for z = 0, a residue and a non-residue lie in distinct classes.
  std::int64_t nonresidue = 2;
  while (legendre(nonresidue, q) != -1) ++nonresidue;
  for (std::int64_t s : {std::int64_t{1}, q - 1}) {
    std::set<int> ids;
    for (std::int64_t z : {std::int64_t{0}, std::int64_t{1}, nonresidue}) {
      ids.insert(cls[static_cast<std::size_t>(encode(Mat2{s, z, 0, s}, q))]);
    }
    if (ids.size() != 3) fail("unipotent representatives are not pairwise non-conjugate");
  }
  // Each split trace x + 1/x occurs in exactly one class.
  std::set<std::int64_t> split_traces;
  for (const auto& c : rep.classes) {
    if (c.family == "split" && !split_traces.insert(c.trace).second) fail("two split classes share a trace");
  }
  return rep;
}

const TableRow* GaloisTables::find(const std::string& label) const {
  for (const auto* t : {&table1, &table2}) {
    for (const TableRow& r : *t) {
      if (r.label == label) return &r;
    }
  }
  return nullptr;
}

GaloisTables load_galois_tables(const std::filesystem::path& path) {
  using nlohmann::json;
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
  auto matrix = [](const json& m) {
    return Mat2{m.at(0).at(0).get<std::int64_t>(), m.at(0).at(1).get<std::int64_t>(),
                m.at(1).at(0).get<std::int64_t>(), m.at(1).at(1).get<std::int64_t>()};
  };
  auto rows = [&](const json& arr) {
    std::vector<TableRow> out;
    for (const json& r : arr) {
      TableRow row;
      try {
        row.label = r.at("label").get<std::string>();
        row.mod3_label = r.value("mod3", "");
        row.level = r.at("level").get<std::int64_t>();
        for (const json& m : r.at("generators")) row.generators.push_back(matrix(m));
        if (r.contains("expected_G")) {
          const json& g = r.at("expected_G");
          if (g.is_string()) {
            row.g_is_sl = g.get<std::string>() == "SL";
          } else {
            for (const json& m : g) row.expected_g.push_back(matrix(m));
          }
        }
        if (r.contains("expected_G_size")) row.expected_g_size = r.at("expected_G_size").get<std::int64_t>();
        if (r.contains("expected_M") && !r.at("expected_M").is_null()) row.expected_m = matrix(r.at("expected_M"));
        const json& d = r.at("expected_delta");
        for (std::size_t i = 0; i < 3; ++i) row.expected_delta[i] = parse_rational(d.at(i).get<std::string>());
        row.example_b1 = r.value("b1", "");
        row.example_b2 = r.value("b2", "");
      } catch (const json::exception& e) {
        throw Error(ErrorKind::ValidationError, path.string() + ": row " + row.label + ": " + e.what());
      }
      out.push_back(std::move(row));
    }
    return out;
  };
  GaloisTables t;
  t.table1 = rows(j.at("table1"));
  t.table2 = rows(j.at("table2"));
  return t;
}

SubgroupCensus row_slice(const TableRow& row, int which) {
  const SubgroupCensus image = generate(row.generators, row.level);
  return det1_slice(at_modulus(image, which == 1 ? 3 : 9));
}

RowCheck verify_row(const TableRow& row, int which) {
  RowCheck out;
  out.label = row.label;
  auto fail = [&](const std::string& what, const std::string& expected, const std::string& got) {
    out.failures.push_back(row.label + ": " + what + " expected " + expected + ", computed " + got);
  };
  const SubgroupCensus image = generate(row.generators, row.level);
  out.image_size = image.size();
  if (which == 2) {
    // The index in GL_2(Z_3) is the second field of the label.
    const auto first = row.label.find('.');
    const auto second = row.label.find('.', first + 1);
    const std::int64_t index = std::stoll(row.label.substr(first + 1, second - first - 1));
    out.expected_image_size = gl2_order(row.level) / index;
    if (out.image_size != out.expected_image_size) {
      fail("image size", std::to_string(out.expected_image_size), std::to_string(out.image_size));
    }
  }
  const std::int64_t level = which == 1 ? 3 : 9;
  const SubgroupCensus at_level = at_modulus(image, level);
  const SubgroupCensus slice = det1_slice(at_level);
  out.g_size = slice.size();
  if (row.expected_g_size && *row.expected_g_size != out.g_size) {
    fail("#G", std::to_string(*row.expected_g_size), std::to_string(out.g_size));
  }
  if (which == 1) {
    std::set<Mat2> got(slice.elements.begin(), slice.elements.end());
    std::set<Mat2> want;
    if (row.g_is_sl) {
      for (const Mat2& m : generate({{1, 1, 0, 1}, {1, 0, 1, 1}}, 3).elements) want.insert(m);
    } else {
      for (const Mat2& m : row.expected_g) want.insert(m.reduced(3));
    }
    if (got != want) fail("G elements", std::to_string(want.size()) + " listed", std::to_string(got.size()) + " differing");
  } else {
    for (const Mat2& m : at_level.elements) {
      if (mod(1 + m.det(9) - m.trace(9), 9) == 3) {
        out.found_m = m;
        break;
      }
    }
    if (row.expected_m) {
      const Mat2 m = row.expected_m->reduced(9);
      if (mod(1 + m.det(9) - m.trace(9), 9) != 3) fail("1 + det M - tr M", "3", std::to_string(mod(1 + m.det(9) - m.trace(9), 9)));
      if (!at_level.contains(m)) fail("M in image", "true", "false");
    } else if (out.found_m) {
      fail("M", "N/A", out.found_m->to_string());
    }
  }
  const Rational lvalue = which == 1 ? Rational(1) : Rational(1, 3);
  out.delta = ordered_triple(density_profile(slice, lvalue), 1);
  if (out.delta != row.expected_delta) {
    auto str = [](const std::array<Rational, 3>& t) {
      return "(" + to_string(t[0]) + ", " + to_string(t[1]) + ", " + to_string(t[2]) + ")";
    };
    fail("delta", str(row.expected_delta), str(out.delta));
  }
  return out;
}

std::vector<RowCheck> verify_table(const GaloisTables& tables, int which) {
  if (which != 1 && which != 2) throw Error(ErrorKind::InvalidArgument, "table must be 1 or 2");
  const auto& rows = which == 1 ? tables.table1 : tables.table2;
  std::vector<std::future<RowCheck>> jobs;
  for (const TableRow& row : rows) jobs.push_back(std::async(std::launch::async, verify_row, std::cref(row), which));
  std::vector<RowCheck> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace lcongr
