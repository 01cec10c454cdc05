#include "lcongr/ec_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "lcongr/errors.hpp"

namespace lcongr {

namespace {

std::int64_t big_mod(const BigInt& x, std::int64_t m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r.convert_to<std::int64_t>();
}

// Reduction of Y^2 = 4x^3 + b2 x^2 + 2 b4 x + b6 modulo an odd prime.
struct CompletedSquare {
  std::int64_t p, b2, b4x2, b6;
};

CompletedSquare completed_square(const CurveData& curve, std::int64_t p) {
  const auto inv = invariants(curve);
  return {p, big_mod(inv.b2, p), big_mod(2 * inv.b4, p), big_mod(inv.b6, p)};
}

// Sum over x in F_p of the Legendre symbol of the cubic, by walking finite
// differences through a table of quadratic residues.
std::int64_t legendre_sum(const CompletedSquare& m) {
  const std::int64_t p = m.p;
  thread_local std::vector<std::int8_t> chi;
  chi.assign(static_cast<std::size_t>(p), -1);
  chi[0] = 0;
  std::int64_t sq = 0;
  for (std::int64_t i = 1; i <= (p - 1) / 2; ++i) {
    sq += 2 * i - 1;
    if (sq >= p) sq %= p;
    chi[sq] = 1;
  }
  std::int64_t f = m.b6;
  std::int64_t d1 = mod(4 + m.b2 + m.b4x2, p);
  std::int64_t d2 = mod(24 + 2 * m.b2, p);
  const std::int64_t d3 = 24 % p;
  std::int64_t sum = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    sum += chi[f];
    f += d1;
    if (f >= p) f -= p;
    d1 += d2;
    if (d1 >= p) d1 -= p;
    d2 += d3;
    if (d2 >= p) d2 -= p;
  }
  return sum;
}

// Pollard rho on 64-bit integers; returns a non-trivial factor of composite n.
std::int64_t rho_factor(std::int64_t n) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 rng(0x5eed);
  while (true) {
    std::int64_t c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n - 1)) + 1;
    std::int64_t x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (mul_mod(x, x, n) + c) % n;
      y = (mul_mod(y, y, n) + c) % n;
      y = (mul_mod(y, y, n) + c) % n;
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_into(std::int64_t n, std::map<std::int64_t, int>& out) {
  if (n == 1) return;
  for (std::int64_t p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  const std::int64_t d = rho_factor(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

struct AffinePoint {
  BigRational x, y;
  bool infinity = false;
};

// Group law on y^2 = x^3 + A x + B.
AffinePoint add_points(const AffinePoint& P, const AffinePoint& Q, const BigRational& A) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  BigRational slope;
  if (P.x == Q.x) {
    if (P.y + Q.y == 0) return {0, 0, true};
    slope = (3 * P.x * P.x + A) / (2 * P.y);
  } else {
    slope = (Q.y - P.y) / (Q.x - P.x);
  }
  BigRational x3 = slope * slope - P.x - Q.x;
  BigRational y3 = slope * (P.x - x3) - P.y;
  return {x3, y3, false};
}

bool is_integral(const BigRational& v) { return denominator(v) == 1; }

// Order of P if it is a torsion point (<= 12 by Mazur), otherwise 0.
int torsion_point_order(const AffinePoint& P, const BigRational& A) {
  AffinePoint Q = P;
  for (int k = 1; k <= 12; ++k) {
    if (Q.infinity) return k;
    if (!is_integral(Q.x) || !is_integral(Q.y)) return 0;
    Q = add_points(Q, P, A);
  }
  return Q.infinity ? 13 : 0;
}

// Integer roots of x^3 + A x + C.
std::vector<BigInt> cubic_integer_roots(const BigInt& A, const BigInt& C) {
  const long double a = A.convert_to<long double>();
  const long double c = C.convert_to<long double>();
  auto g = [&](long double x) { return (x * x + a) * x + c; };
  const long double bound = 1.0L + std::max(std::fabs(a), std::fabs(c));
  std::vector<std::pair<long double, long double>> brackets;
  if (a >= 0) {
    brackets.emplace_back(-bound, bound);
  } else {
    const long double s = std::sqrt(-a / 3.0L);
    brackets.emplace_back(-bound, -s);
    brackets.emplace_back(-s, s);
    brackets.emplace_back(s, bound);
  }
  std::vector<BigInt> roots;
  for (auto [lo, hi] : brackets) {
    long double glo = g(lo), ghi = g(hi);
    if ((glo > 0) == (ghi > 0) && glo != 0 && ghi != 0) continue;
    for (int it = 0; it < 400 && hi - lo > 0.25L; ++it) {
      const long double mid = 0.5L * (lo + hi);
      const long double gm = g(mid);
      if ((gm > 0) == (glo > 0)) {
        lo = mid;
        glo = gm;
      } else {
        hi = mid;
      }
    }
    const BigInt centre(static_cast<long long>(std::floor(0.5L * (lo + hi))));
    for (int k = -2; k <= 2; ++k) {
      const BigInt x = centre + k;
      if ((x * x + A) * x + C == 0 && std::find(roots.begin(), roots.end(), x) == roots.end()) {
        roots.push_back(x);
      }
    }
  }
  return roots;
}

}  // namespace

bool CurveData::has_no_isogeny(std::int64_t q) const {
  return std::find(no_isogeny_primes.begin(), no_isogeny_primes.end(), q) !=
         no_isogeny_primes.end();
}

Invariants invariants(const CurveData& curve) {
  const BigInt a1 = curve.ainvs[0], a2 = curve.ainvs[1], a3 = curve.ainvs[2],
               a4 = curve.ainvs[3], a6 = curve.ainvs[4];
  Invariants inv;
  inv.b2 = a1 * a1 + 4 * a2;
  inv.b4 = 2 * a4 + a1 * a3;
  inv.b6 = a3 * a3 + 4 * a6;
  inv.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  inv.c4 = inv.b2 * inv.b2 - 24 * inv.b4;
  inv.c6 = -inv.b2 * inv.b2 * inv.b2 + 36 * inv.b2 * inv.b4 - 216 * inv.b6;
  inv.discriminant = -inv.b2 * inv.b2 * inv.b8 - 8 * inv.b4 * inv.b4 * inv.b4 -
                     27 * inv.b6 * inv.b6 + 9 * inv.b2 * inv.b4 * inv.b6;
  return inv;
}

BigInt discriminant(const CurveData& curve) { return invariants(curve).discriminant; }

std::int64_t count_points_naive(const CurveData& curve, std::int64_t p) {
  const auto& a = curve.ainvs;
  const std::int64_t a1 = mod(a[0], p), a2 = mod(a[1], p), a3 = mod(a[2], p),
                     a4 = mod(a[3], p), a6 = mod(a[4], p);
  std::int64_t count = 1;
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t rhs = mod(((x + a2) * x % p + a4) * x + a6, p);
    for (std::int64_t y = 0; y < p; ++y) {
      if (mod(y * y + a1 * x % p * y + a3 * y, p) == rhs) ++count;
    }
  }
  return count;
}

std::int64_t count_reduction_points(const CurveData& curve, std::int64_t p) {
  if (p == 2) return count_points_naive(curve, p);
  if (p >= kMaxCountPrime) {
    throw Error(ErrorKind::Overflow, "prime " + std::to_string(p) + " beyond point-count range");
  }
  return p + 1 + legendre_sum(completed_square(curve, p));
}

std::int64_t count_points(const CurveData& curve, std::int64_t p) {
  if (p % 2 == 0 || !is_prime(p)) {
    throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not an odd prime");
  }
  if (p >= kMaxCountPrime) {
    throw Error(ErrorKind::Overflow, "prime " + std::to_string(p) + " beyond point-count range");
  }
  if (big_mod(discriminant(curve), p) == 0) {
    throw Error(ErrorKind::BadReduction, curve.label + " has bad reduction at " + std::to_string(p));
  }
  return count_reduction_points(curve, p);
}

std::int64_t ap(const CurveData& curve, std::int64_t p) {
  // p + 1 minus the point count of the reduction covers all three cases: the
  // node or cusp contributes one point, leaving p -+ 1 or p non-singular points.
  return p + 1 - count_reduction_points(curve, p);
}

CoefficientTable an_table(const CurveData& curve, std::int64_t nmax) {
  if (nmax < 1) throw Error(ErrorKind::InvalidArgument, "nmax must be positive");
  std::vector<std::int64_t> spf(static_cast<std::size_t>(nmax + 1), 0);
  for (std::int64_t i = 2; i <= nmax; ++i) {
    if (spf[i] != 0) continue;
    for (std::int64_t j = i; j <= nmax; j += i) {
      if (spf[j] == 0) spf[j] = i;
    }
  }
  CoefficientTable table{curve.label, std::vector<std::int64_t>(static_cast<std::size_t>(nmax))};
  auto& a = table.values;
  a[0] = 1;
  for (std::int64_t n = 2; n <= nmax; ++n) {
    const std::int64_t p = spf[n];
    std::int64_t pk = p, m = n / p;
    while (m % p == 0) {
      m /= p;
      pk *= p;
    }
    if (m > 1) {
      a[n - 1] = a[pk - 1] * a[m - 1];
    } else if (pk == p) {
      a[n - 1] = ap(curve, p);
    } else if (curve.conductor % p == 0) {
      a[n - 1] = a[p - 1] * a[pk / p - 1];
    } else {
      a[n - 1] = a[p - 1] * a[pk / p - 1] - p * a[pk / p / p - 1];
    }
  }
  return table;
}

std::int64_t torsion_bound(const CurveData& curve, int prime_count) {
  const BigInt disc = discriminant(curve);
  std::int64_t bound = 0;
  int used = 0;
  for (std::int64_t p = 5; used < prime_count; p += 2) {
    if (!is_prime(p) || big_mod(disc, p) == 0) continue;
    bound = std::gcd(bound, count_points(curve, p));
    ++used;
  }
  return bound;
}

std::int64_t torsion_order(const CurveData& curve) {
  const std::int64_t bound = torsion_bound(curve);
  if (bound == 1) return 1;

  // Integral short model y^2 = x^3 + A x + B isomorphic over Q to the curve.
  const auto inv = invariants(curve);
  const BigInt A = -27 * inv.c4;
  const BigInt B = -54 * inv.c6;
  const BigInt abs_disc = abs(inv.discriminant);
  if (abs_disc > std::numeric_limits<std::int64_t>::max()) {
    throw Error(ErrorKind::Overflow, "discriminant of " + curve.label + " too large to factor");
  }
  // 4A^3 + 27B^2 = -2^8 3^12 disc.
  std::map<std::int64_t, int> factors;
  factor_into(abs_disc.convert_to<std::int64_t>(), factors);
  factors[2] += 8;
  factors[3] += 12;

  std::vector<BigInt> ys{0, 1};
  for (auto [prime, exponent] : factors) {
    std::vector<BigInt> next;
    for (const BigInt& y : ys) {
      if (y == 0) continue;
      BigInt power = 1;
      for (int e = 0; e <= exponent / 2; ++e) {
        next.push_back(y * power);
        power *= prime;
      }
    }
    next.push_back(0);
    ys = std::move(next);
  }
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  const BigRational A_rat(A);
  std::int64_t torsion_points = 1;
  for (const BigInt& y : ys) {
    for (const BigInt& x : cubic_integer_roots(A, B - y * y)) {
      const AffinePoint P{BigRational(x), BigRational(y), false};
      if (torsion_point_order(P, A_rat) == 0) continue;
      torsion_points += (y == 0) ? 1 : 2;
    }
  }
  if (bound % torsion_points != 0) {
    throw Error(ErrorKind::Mismatch, "torsion search for " + curve.label + " found " +
                                         std::to_string(torsion_points) +
                                         " points, not dividing the bound " + std::to_string(bound));
  }
  return torsion_points;
}

std::vector<BigInt> three_division_poly(const CurveData& curve) {
  const auto inv = invariants(curve);
  return {inv.b8, 3 * inv.b6, 3 * inv.b4, inv.b2, BigInt(3)};
}

bool splits_completely_in_K3(const CurveData& curve, std::int64_t p) {
  if (p % 2 == 0 || p == 3 || !is_prime(p) || big_mod(discriminant(curve), p) == 0) {
    throw Error(ErrorKind::BadPrime, std::to_string(p) + " is not an odd prime coprime to 3*disc");
  }
  const auto psi = three_division_poly(curve);
  std::array<std::int64_t, 5> c{};
  for (std::size_t i = 0; i < 5; ++i) c[i] = big_mod(psi[i], p);
  int roots = 0;
  for (std::int64_t x = 0; x < p && roots < 4; ++x) {
    std::int64_t v = c[4];
    for (int i = 3; i >= 0; --i) v = (mul_mod(v, x, p) + c[i]) % p;
    if (v == 0) ++roots;
  }
  return roots == 4;
}

std::optional<int> discriminant_conductor_power(const CurveData& curve) {
  BigInt disc = abs(discriminant(curve));
  if (curve.conductor <= 1) return std::nullopt;
  int n = 0;
  while (disc % curve.conductor == 0) {
    disc /= curve.conductor;
    ++n;
  }
  if (disc != 1) return std::nullopt;
  return n;
}

}  // namespace lcongr
