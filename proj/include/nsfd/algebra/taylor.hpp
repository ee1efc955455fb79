#pragma once

// Continuous limits of difference polynomials: every shifted grid value is
// replaced by its Taylor series about the node (x_j, y_k, t_n) and the result
// is collected by powers of h and tau.

#include "nsfd/algebra/difference.hpp"
#include "nsfd/algebra/differential.hpp"
#include "nsfd/algebra/rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nsfd::algebra {

/// Mesh powers (h^first, tau^second).
using MeshPower = std::pair<int, int>;

/// Numeric-coefficient jet polynomials used while expanding.
using JetSeriesTerm = Polynomial<JetVar, Rational, JetRank>;
using JetSeries = std::map<MeshPower, JetSeriesTerm>;

struct LimitResult {
  DifferentialPolynomial limit;                           // the h^0 tau^0 part
  std::map<MeshPower, DifferentialPolynomial> expansion;  // nonzero parts known exactly
  bool exists = false;                                    // no negative powers survive
  std::optional<MeshPower> offending;                     // first surviving negative power
  int truncation = 0;                                     // K
  int exact_through = 0;  // parts with total power <= this are exact
};

namespace detail {

inline mpq_class factorial(int n) {
  mpz_class f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return mpq_class(f);
}

inline mpq_class power(int base, int e) {
  mpz_class r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return mpq_class(r);
}

/// Series of w_{j+x, k+y}^{n+t} truncated at total mesh power K.
inline JetSeries shifted_var_series(const ShiftedVar& v, int K) {
  JetSeries s;
  for (int a = 0; a <= K; ++a)
    for (int b = 0; a + b <= K; ++b)
      for (int c = 0; a + b + c <= K; ++c) {
        mpq_class coef = power(v.shift.x, a) * power(v.shift.y, b) * power(v.shift.t, c) /
                         (factorial(a) * factorial(b) * factorial(c));
        coef.canonicalize();
        if (sgn(coef) == 0) continue;
        s[{a + b, c}].add_term(JetMonomial(JetVar{v.indet, a, b, c}), Rational(coef));
      }
  return s;
}

inline JetSeries multiply(const JetSeries& a, const JetSeries& b, int K) {
  JetSeries r;
  for (const auto& [pa, fa] : a)
    for (const auto& [pb, fb] : b) {
      const MeshPower p{pa.first + pb.first, pa.second + pb.second};
      if (p.first + p.second > K) continue;
      r[p] += fa * fb;
    }
  std::erase_if(r, [](const auto& kv) { return kv.second.is_zero(); });
  return r;
}

}  // namespace detail

/// Default truncation: enough to resolve fourth-order terms beyond the most
/// singular coefficient and the widest shift.
inline int default_truncation(const DifferencePolynomial& f) {
  int widest = 0, singular = 0;
  f.for_each_var([&](const ShiftedVar& v) {
    widest = std::max({widest, std::abs(v.shift.x), std::abs(v.shift.y), std::abs(v.shift.t)});
  });
  for (const auto& [m, c] : f.terms()) {
    const auto parts = c.mesh_laurent();
    if (!parts) continue;
    for (const auto& [p, unused] : *parts) singular = std::max(singular, -(p.first + p.second));
  }
  return std::max(widest, singular) + 4;
}

/// Exact Taylor expansion of f truncated at total Taylor order K, collected
/// by mesh powers with coefficients in Q(Re).
inline LimitResult taylor_limit(const DifferencePolynomial& f, int K) {
  if (K < 0) throw std::invalid_argument("taylor_limit: negative truncation");
  LimitResult out;
  out.truncation = K;

  std::map<std::pair<Indet, std::tuple<int, int, int>>, JetSeries> var_cache;
  auto series_of = [&](const ShiftedVar& v) -> const JetSeries& {
    const auto key = std::make_pair(v.indet, std::make_tuple(v.shift.x, v.shift.y, v.shift.t));
    auto it = var_cache.find(key);
    if (it == var_cache.end()) it = var_cache.emplace(key, detail::shifted_var_series(v, K)).first;
    return it->second;
  };

  int min_coeff_power = 0;
  bool first = true;
  std::map<MeshPower, DifferentialPolynomial> acc;
  for (const auto& [mono, coeff] : f.terms()) {
    const auto parts = coeff.mesh_laurent();
    if (!parts) throw std::domain_error("taylor_limit: coefficient is not a Laurent polynomial in h, tau");
    JetSeries s{{{0, 0}, JetSeriesTerm(Rational(1))}};
    for (const auto& [v, e] : mono.factors())
      for (int i = 0; i < e; ++i) s = detail::multiply(s, series_of(v), K);
    for (const auto& [cp, c] : *parts) {
      min_coeff_power = first ? cp.first + cp.second : std::min(min_coeff_power, cp.first + cp.second);
      first = false;
      for (const auto& [sp, term] : s) {
        auto& slot = acc[{cp.first + sp.first, cp.second + sp.second}];
        for (const auto& [jm, q] : term.terms()) slot.add_term(jm, c * ParamRational(q.q));
      }
    }
  }
  out.exact_through = K + min_coeff_power;
  for (auto& [p, poly] : acc)
    if (!poly.is_zero() && p.first + p.second <= out.exact_through) out.expansion.emplace(p, std::move(poly));

  out.exists = true;
  for (const auto& [p, poly] : out.expansion)
    if (p.first < 0 || p.second < 0) {
      out.exists = false;
      out.offending = p;
      break;
    }
  if (auto it = out.expansion.find({0, 0}); it != out.expansion.end()) out.limit = it->second;
  return out;
}

inline LimitResult taylor_limit(const DifferencePolynomial& f) { return taylor_limit(f, default_truncation(f)); }

/// The lowest-order part of the expansion, i.e. the differential equation
/// implied by f = 0 as h, tau -> 0: the unique component minimal in the
/// product order on (h power, tau power). Nullopt when f expands to zero
/// within the truncation or the minimum is not unique.
struct EquationLimit {
  MeshPower power;
  DifferentialPolynomial equation;
};

inline std::optional<EquationLimit> equation_limit(const LimitResult& r) {
  std::vector<MeshPower> minimal;
  for (const auto& [p, poly] : r.expansion) {
    bool dominated = false;
    for (const auto& [q, unused] : r.expansion)
      if (q != p && q.first <= p.first && q.second <= p.second) dominated = true;
    if (!dominated) minimal.push_back(p);
  }
  if (minimal.size() != 1) return std::nullopt;
  return EquationLimit{minimal[0], r.expansion.at(minimal[0])};
}

/// Scalar s with a = s * b when one exists (b nonzero).
inline std::optional<ParamRational> proportionality(const DifferentialPolynomial& a, const DifferentialPolynomial& b) {
  if (b.is_zero() || a.is_zero() || a.size() != b.size()) return std::nullopt;
  const ParamRational s = a.leading_coefficient() / b.leading_coefficient();
  if (a == b * s) return s;
  return std::nullopt;
}

}  // namespace nsfd::algebra
