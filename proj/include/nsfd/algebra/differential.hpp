#pragma once

// Differential polynomials in the jets of u, v, p, the Navier-Stokes system
// and reduction modulo its total derivatives up to a derivative order bound.

#include "nsfd/algebra/difference.hpp"
#include "nsfd/algebra/param_rational.hpp"
#include "nsfd/algebra/polynomial.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace nsfd::algebra {

/// d^x/dx d^y/dy d^t/dt applied to an indeterminate.
struct JetVar {
  Indet indet = Indet::u;
  int dx = 0, dy = 0, dt = 0;

  int order() const { return dx + dy + dt; }
  friend bool operator==(const JetVar&, const JetVar&) = default;

  std::string to_string() const {
    std::string s = indet_name(indet);
    if (order() == 0) return s;
    s += "_";
    s.append(dx, 'x');
    s.append(dy, 'y');
    s.append(dt, 't');
    return s;
  }
};

/// Orderly ranking mirroring the difference side: t-derivatives first, then
/// total x/y order, then p > u > v, then the x order.
struct JetRank {
  bool operator()(const JetVar& a, const JetVar& b) const {
    if (a.dt != b.dt) return a.dt < b.dt;
    if (a.dx + a.dy != b.dx + b.dy) return a.dx + a.dy < b.dx + b.dy;
    if (a.indet != b.indet) return a.indet < b.indet;
    return a.dx < b.dx;
  }
};

using JetMonomial = Monomial<JetVar, JetRank>;
using DifferentialPolynomial = Polynomial<JetVar, ParamRational, JetRank>;

inline DifferentialPolynomial jet(Indet w, int dx = 0, int dy = 0, int dt = 0) {
  return DifferentialPolynomial(JetVar{w, dx, dy, dt});
}

enum class Direction { x = 0, y = 1, t = 2 };

inline JetVar differentiate(JetVar v, Direction d) {
  if (d == Direction::x) ++v.dx;
  if (d == Direction::y) ++v.dy;
  if (d == Direction::t) ++v.dt;
  return v;
}

/// Total derivative; coefficients are constants in x, y, t.
inline DifferentialPolynomial total_derivative(const DifferentialPolynomial& f, Direction d) {
  DifferentialPolynomial r;
  for (const auto& [m, c] : f.terms()) {
    const auto& fs = m.factors();
    for (std::size_t i = 0; i < fs.size(); ++i) {
      std::vector<std::pair<JetVar, int>> out;
      for (std::size_t k = 0; k < fs.size(); ++k)
        if (k != i) out.push_back(fs[k]);
      if (fs[i].second > 1) out.emplace_back(fs[i].first, fs[i].second - 1);
      out.emplace_back(differentiate(fs[i].first, d), 1);
      r.add_term(JetMonomial::from_factors(std::move(out)), c * ParamRational(fs[i].second));
    }
  }
  return r;
}

inline DifferentialPolynomial total_derivative(const DifferentialPolynomial& f, int dx, int dy, int dt) {
  DifferentialPolynomial r = f;
  for (int i = 0; i < dx; ++i) r = total_derivative(r, Direction::x);
  for (int i = 0; i < dy; ++i) r = total_derivative(r, Direction::y);
  for (int i = 0; i < dt; ++i) r = total_derivative(r, Direction::t);
  return r;
}

/// The incompressible Navier-Stokes equations f1..f4 (continuity, the two
/// momentum equations, pressure Poisson).
inline std::array<DifferentialPolynomial, 4> navier_stokes() {
  const auto u = [](int x, int y, int t) { return jet(Indet::u, x, y, t); };
  const auto v = [](int x, int y, int t) { return jet(Indet::v, x, y, t); };
  const auto p = [](int x, int y) { return jet(Indet::p, x, y, 0); };
  const ParamRational nu = ParamRational(1) / ParamRational::re();
  return {
      u(1, 0, 0) + v(0, 1, 0),
      u(0, 0, 1) + u(0, 0, 0) * u(1, 0, 0) + v(0, 0, 0) * u(0, 1, 0) + p(1, 0) - (u(2, 0, 0) + u(0, 2, 0)) * nu,
      v(0, 0, 1) + u(0, 0, 0) * v(1, 0, 0) + v(0, 0, 0) * v(0, 1, 0) + p(0, 1) - (v(2, 0, 0) + v(0, 2, 0)) * nu,
      u(1, 0, 0) * u(1, 0, 0) + v(1, 0, 0) * u(0, 1, 0) * ParamRational(2) + v(0, 1, 0) * v(0, 1, 0) + p(2, 0) +
          p(0, 2),
  };
}

/// One reduction step: coefficient * monomial * D^(dx,dy,dt) f_equation.
struct DifferentialCofactor {
  int equation = 0;  // 0..3
  int dx = 0, dy = 0, dt = 0;
  ParamRational coefficient;
  JetMonomial multiplier;
};

struct DifferentialNormalForm {
  DifferentialPolynomial remainder;
  std::vector<DifferentialCofactor> cofactors;
  int order_bound = 0;
};

/// Reduces polynomials modulo the derivatives of f1..f4 of order <= a bound.
/// Each f_i is linear in its leader with coefficient 1 (u_x, u_t, v_t, p_xx),
/// so every derivative of a leader is reduced by the corresponding derivative
/// of f_i. When a jet is a derivative of several leaders the highest-ranked
/// leader is used.
class DifferentialReducer {
 public:
  explicit DifferentialReducer(int order_bound) : bound_(order_bound), system_(navier_stokes()) {
    // Leaders in decreasing rank.
    leaders_ = {{1, {Indet::u, 0, 0, 1}}, {2, {Indet::v, 0, 0, 1}}, {3, {Indet::p, 2, 0, 0}}, {0, {Indet::u, 1, 0, 0}}};
  }

  int order_bound() const { return bound_; }
  const std::array<DifferentialPolynomial, 4>& system() const { return system_; }

  /// The generator index and derivative whose leader equals `v`, if any.
  std::optional<std::pair<int, JetVar>> reductor_for(const JetVar& v) const {
    for (const auto& [eq, lead] : leaders_) {
      if (lead.indet != v.indet || v.dx < lead.dx || v.dy < lead.dy || v.dt < lead.dt) continue;
      const JetVar theta{lead.indet, v.dx - lead.dx, v.dy - lead.dy, v.dt - lead.dt};
      if (theta.order() + system_order(eq) > bound_) continue;
      return std::make_pair(eq, theta);
    }
    return std::nullopt;
  }

  const DifferentialPolynomial& derivative(int eq, const JetVar& theta) {
    const auto key = std::make_tuple(eq, theta.dx, theta.dy, theta.dt);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    DifferentialPolynomial d;
    if (theta.order() == 0) {
      d = system_[eq];
    } else {
      // Build from a cached lower derivative.
      JetVar lower = theta;
      Direction dir = Direction::t;
      if (lower.dt > 0) {
        --lower.dt;
      } else if (lower.dy > 0) {
        --lower.dy;
        dir = Direction::y;
      } else {
        --lower.dx;
        dir = Direction::x;
      }
      d = total_derivative(derivative(eq, lower), dir);
    }
    return cache_.emplace(key, std::move(d)).first->second;
  }

  DifferentialNormalForm reduce(const DifferentialPolynomial& f) {
    DifferentialNormalForm out;
    out.order_bound = bound_;
    DifferentialPolynomial rest = f;
    while (!rest.is_zero()) {
      const auto [lm, lc] = rest.leading_term();
      std::optional<std::pair<int, JetVar>> red;
      JetVar hit;
      for (const auto& [v, e] : lm.factors()) {  // highest-ranked first
        red = reductor_for(v);
        if (red) {
          hit = v;
          break;
        }
      }
      if (!red) {
        out.remainder.add_term(lm, lc);
        rest.add_term(lm, -lc);
        continue;
      }
      const auto& g = derivative(red->first, red->second);
      const JetMonomial mult = JetMonomial(hit).quotient_of(lm);
      rest -= g.times_term(mult, lc);
      out.cofactors.push_back({red->first, red->second.dx, red->second.dy, red->second.dt, lc, mult});
    }
    return out;
  }

  DifferentialPolynomial reconstruct(const DifferentialNormalForm& nf) {
    DifferentialPolynomial r = nf.remainder;
    for (const auto& c : nf.cofactors)
      r += derivative(c.equation, {Indet::u, c.dx, c.dy, c.dt}).times_term(c.multiplier, c.coefficient);
    return r;
  }

 private:
  static int system_order(int eq) { return eq == 0 ? 1 : 2; }

  int bound_;
  std::array<DifferentialPolynomial, 4> system_;
  std::vector<std::pair<int, JetVar>> leaders_;
  std::map<std::tuple<int, int, int, int>, DifferentialPolynomial> cache_;
};

/// Normal form of f modulo f1..f4 and their derivatives of order <= order_bound.
inline DifferentialNormalForm differential_reduce(const DifferentialPolynomial& f, int order_bound) {
  return DifferentialReducer(order_bound).reduce(f);
}

}  // namespace nsfd::algebra
