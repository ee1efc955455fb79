#pragma once

// Difference polynomials in the shifted grid functions u, v, p with
// coefficients in Q(Re, h, tau).

#include "nsfd/algebra/param_rational.hpp"
#include "nsfd/algebra/polynomial.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsfd::algebra {

/// The three unknowns. Numeric value is the rank: p > u > v.
enum class Indet : std::uint8_t { v = 0, u = 1, p = 2 };

inline const char* indet_name(Indet w) {
  switch (w) {
    case Indet::u: return "u";
    case Indet::v: return "v";
    case Indet::p: return "p";
  }
  return "?";
}

/// Powers of (sigma_x, sigma_y, sigma_t).
struct Shift {
  int x = 0, y = 0, t = 0;

  friend Shift operator+(Shift a, Shift b) { return {a.x + b.x, a.y + b.y, a.t + b.t}; }
  friend Shift operator-(Shift a, Shift b) { return {a.x - b.x, a.y - b.y, a.t - b.t}; }
  friend bool operator==(const Shift&, const Shift&) = default;
  friend auto operator<=>(const Shift&, const Shift&) = default;
  bool nonnegative() const { return x >= 0 && y >= 0 && t >= 0; }
  std::string to_string() const {
    return "(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(t) + ")";
  }
};

/// sigma_x^x sigma_y^y sigma_t^t applied to an indeterminate, i.e. the grid
/// value w_{j+x, k+y}^{n+t}.
struct ShiftedVar {
  Indet indet = Indet::u;
  Shift shift;

  friend bool operator==(const ShiftedVar&, const ShiftedVar&) = default;

  std::string to_string() const {
    auto off = [](const char* base, int d) {
      std::string s = base;
      if (d > 0) s += "+" + std::to_string(d);
      if (d < 0) s += std::to_string(d);
      return s;
    };
    return std::string(indet_name(indet)) + "[" + off("j", shift.x) + "," + off("k", shift.y) + "," +
           off("n", shift.t) + "]";
  }
};

/// Orderly block ranking: time shift first, then total space shift, then
/// p > u > v, then the x shift. Translation invariant, so it is a ranking on
/// the forward-shift monoid and stays a total order on signed shifts.
struct ShiftRank {
  bool operator()(const ShiftedVar& a, const ShiftedVar& b) const {
    if (a.shift.t != b.shift.t) return a.shift.t < b.shift.t;
    const int sa = a.shift.x + a.shift.y, sb = b.shift.x + b.shift.y;
    if (sa != sb) return sa < sb;
    if (a.indet != b.indet) return a.indet < b.indet;
    return a.shift.x < b.shift.x;
  }
};

using DifferenceMonomial = Monomial<ShiftedVar, ShiftRank>;
using DifferencePolynomial = Polynomial<ShiftedVar, ParamRational, ShiftRank>;

inline DifferencePolynomial var(Indet w, Shift s = {}) { return DifferencePolynomial(ShiftedVar{w, s}); }

inline DifferenceMonomial shift(const DifferenceMonomial& m, Shift s) {
  return m.map_vars([s](const ShiftedVar& v) { return ShiftedVar{v.indet, v.shift + s}; });
}

inline DifferencePolynomial shift(const DifferencePolynomial& f, Shift s) {
  if (s == Shift{}) return f;
  return f.map_vars([s](const ShiftedVar& v) { return ShiftedVar{v.indet, v.shift + s}; });
}

/// Componentwise minimum of the shifts occurring in f (zero for constants).
inline Shift min_shift(const DifferencePolynomial& f) {
  Shift lo;
  bool first = true;
  f.for_each_var([&](const ShiftedVar& v) {
    if (first) {
      lo = v.shift;
      first = false;
      return;
    }
    lo = {std::min(lo.x, v.shift.x), std::min(lo.y, v.shift.y), std::min(lo.t, v.shift.t)};
  });
  return lo;
}

inline Shift max_shift(const DifferencePolynomial& f) {
  Shift hi;
  bool first = true;
  f.for_each_var([&](const ShiftedVar& v) {
    if (first) {
      hi = v.shift;
      first = false;
      return;
    }
    hi = {std::max(hi.x, v.shift.x), std::max(hi.y, v.shift.y), std::max(hi.t, v.shift.t)};
  });
  return hi;
}

inline bool is_normalized(const DifferenceMonomial& m) {
  for (const auto& [v, e] : m.factors())
    if (!v.shift.nonnegative()) return false;
  return true;
}

inline bool is_normalized(const DifferencePolynomial& f) {
  for (const auto& [m, c] : f.terms())
    if (!is_normalized(m)) return false;
  return true;
}

/// The smallest forward shift making every shift of f nonnegative.
inline Shift normalizing_shift(const DifferencePolynomial& f) {
  const Shift lo = min_shift(f);
  return {std::max(0, -lo.x), std::max(0, -lo.y), std::max(0, -lo.t)};
}

enum class Ordering { less, equal, greater };

/// The admissible monomial order: lexicographic over the ranking. Inputs must
/// be normalized (forward shifts only).
inline Ordering compare(const DifferenceMonomial& a, const DifferenceMonomial& b) {
  if (!is_normalized(a) || !is_normalized(b))
    throw std::invalid_argument("compare: monomial has negative shifts; normalize first");
  const int c = lex_compare(a, b);
  return c < 0 ? Ordering::less : (c > 0 ? Ordering::greater : Ordering::equal);
}

struct DivisionWitness {
  DifferenceMonomial mu;
  Shift sigma;
};

/// Shifted divisibility: finds mu and sigma >= 0 with beta = mu * (sigma o alpha).
inline std::optional<DivisionWitness> divides(const DifferenceMonomial& alpha, const DifferenceMonomial& beta) {
  if (alpha.is_one()) return DivisionWitness{beta, Shift{}};
  // Any valid sigma maps alpha's leader onto some variable of beta.
  const ShiftedVar& lead = alpha.leader();
  for (const auto& [bv, be] : beta.factors()) {
    if (bv.indet != lead.indet) continue;
    const Shift s = bv.shift - lead.shift;
    if (!s.nonnegative()) continue;
    const auto shifted = shift(alpha, s);
    if (shifted.divides(beta)) return DivisionWitness{shifted.quotient_of(beta), s};
  }
  return std::nullopt;
}

struct SPolynomial {
  DifferencePolynomial value;
  DifferenceMonomial m1, m2;
  Shift sigma1, sigma2;
};

/// S-polynomial m1*(sigma1 o p)/lc(p) - m2*(sigma2 o q)/lc(q), where sigma1
/// and sigma2 have disjoint support and m1*(sigma1 o lm p) = m2*(sigma2 o lm q)
/// is the smallest such common multiple. Returns nullopt when the only
/// candidate is the trivial one (identical shifts and multipliers).
inline std::optional<SPolynomial> spoly(const DifferencePolynomial& p, const DifferencePolynomial& q) {
  if (p.is_zero() || q.is_zero()) return std::nullopt;
  const auto& a = p.leading_monomial();
  const auto& b = q.leading_monomial();

  std::optional<SPolynomial> best;
  std::optional<DifferenceMonomial> best_lcm;
  auto consider = [&](Shift s1, Shift s2) {
    const auto sa = shift(a, s1), sb = shift(b, s2);
    const auto l = lcm(sa, sb);
    const auto m1 = sa.quotient_of(l), m2 = sb.quotient_of(l);
    if (s1 == s2 && m1 == m2 && p == q) return;
    if (best_lcm && !(l < *best_lcm)) return;
    best_lcm = l;
    best = SPolynomial{{}, m1, m2, s1, s2};
  };
  bool matched = false;
  for (const auto& [av, ae] : a.factors())
    for (const auto& [bv, be] : b.factors()) {
      if (av.indet != bv.indet) continue;
      matched = true;
      const Shift d = bv.shift - av.shift;
      consider({std::max(d.x, 0), std::max(d.y, 0), std::max(d.t, 0)},
               {std::max(-d.x, 0), std::max(-d.y, 0), std::max(-d.t, 0)});
    }
  if (!matched) consider({}, {});
  if (!best) return std::nullopt;

  best->value = shift(p, best->sigma1).times_term(best->m1, ParamRational(1) / p.leading_coefficient()) -
                shift(q, best->sigma2).times_term(best->m2, ParamRational(1) / q.leading_coefficient());
  return best;
}

/// One reduction step: coefficient * mu * (sigma o G[index]).
struct Cofactor {
  std::size_t index = 0;
  ParamRational coefficient;
  DifferenceMonomial mu;
  Shift sigma;
};

struct NormalForm {
  DifferencePolynomial remainder;
  std::vector<Cofactor> cofactors;
};

/// Full reduction of f modulo G. The result satisfies
/// f = sum(coefficient * mu * (sigma o G[index])) + remainder.
inline NormalForm normal_form(const DifferencePolynomial& f, const std::vector<DifferencePolynomial>& G) {
  NormalForm out;
  DifferencePolynomial rest = f;
  while (!rest.is_zero()) {
    const auto [lm, lc] = rest.leading_term();
    bool reduced = false;
    for (std::size_t i = 0; i < G.size() && !reduced; ++i) {
      if (G[i].is_zero()) continue;
      auto w = divides(G[i].leading_monomial(), lm);
      if (!w) continue;
      const ParamRational c = lc / G[i].leading_coefficient();
      rest -= shift(G[i], w->sigma).times_term(w->mu, c);
      out.cofactors.push_back({i, c, w->mu, w->sigma});
      reduced = true;
    }
    if (!reduced) {
      out.remainder.add_term(lm, lc);
      rest.add_term(lm, -lc);
    }
  }
  return out;
}

/// Rebuilds sum(cofactor terms) + remainder from a reduction record.
inline DifferencePolynomial reconstruct(const NormalForm& nf, const std::vector<DifferencePolynomial>& G) {
  DifferencePolynomial r = nf.remainder;
  for (const auto& c : nf.cofactors) r += shift(G[c.index], c.sigma).times_term(c.mu, c.coefficient);
  return r;
}

}  // namespace nsfd::algebra
