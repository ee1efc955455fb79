#pragma once

// Floating-point evaluation of the scheme stencils on grid fields: the
// continuity residual, the explicit velocity update and the pressure system.

#include "nsfd/core/grid.hpp"
#include "nsfd/schemes/definitions.hpp"
#include "nsfd/solver/sparse.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace nsfd {

struct StencilFactor {
  Indet which;
  int dj, dk, dn;
  int exponent;
};

/// One summand of a difference equation: a coefficient times a product of
/// shifted grid values.
struct StencilTerm {
  double coefficient;
  std::vector<StencilFactor> factors;
};

using Stencil = std::vector<StencilTerm>;

inline Stencil compile(const DifferencePolynomial& f, const GridSpec& g) {
  Stencil out;
  for (const auto& [mono, c] : f.terms()) {
    StencilTerm t{c.evaluate(g.re, g.h, g.tau), {}};
    for (const auto& [var, e] : mono.factors())
      t.factors.push_back({var.indet, var.shift.x, var.shift.y, var.shift.t, e});
    out.push_back(std::move(t));
  }
  return out;
}

/// Evaluates the product of factors of `t` at (j, k) using level-n fields.
inline double evaluate_factors(const StencilTerm& t, const State& s, int j, int k) {
  double r = 1;
  for (const auto& f : t.factors) {
    const double x = s.get(f.which)(j + f.dj, k + f.dk);
    for (int e = 0; e < f.exponent; ++e) r *= x;
  }
  return r;
}

inline double evaluate(const Stencil& st, const State& s, int j, int k) {
  double sum = 0;
  for (const auto& t : st) sum += t.coefficient * evaluate_factors(t, s, j, k);
  return sum;
}

inline double residual_e1(SchemeId id, const GridSpec& g, const State& s, int j, int k) {
  if (j < 1 || j > g.m || k < 1 || k > g.m) throw std::out_of_range("residual_e1: node not interior");
  return evaluate(compile(scheme(id).equations[0], g), s, j, k);
}

inline double max_abs_residual_e1(SchemeId id, const GridSpec& g, const State& s) {
  const auto st = compile(scheme(id).equations[0], g);
  double worst = 0;
  for (int j = 1; j <= g.m; ++j)
    for (int k = 1; k <= g.m; ++k) worst = std::max(worst, std::abs(evaluate(st, s, j, k)));
  return worst;
}

/// A momentum equation split as unknown_coefficient * w^{n+1}_{jk} + rest(level n) = 0.
struct ExplicitUpdate {
  double unknown_coefficient = 0;
  Stencil rest;
};

inline ExplicitUpdate explicit_update(const DifferencePolynomial& eq, Indet unknown, const GridSpec& g) {
  ExplicitUpdate out;
  for (auto& t : compile(eq, g)) {
    const bool is_unknown = t.factors.size() == 1 && t.factors[0].which == unknown && t.factors[0].dj == 0 &&
                            t.factors[0].dk == 0 && t.factors[0].dn == 1 && t.factors[0].exponent == 1;
    if (is_unknown) {
      out.unknown_coefficient += t.coefficient;
      continue;
    }
    for (const auto& f : t.factors)
      if (f.dn != 0) throw std::logic_error("momentum equation is not explicit in time");
    out.rest.push_back(std::move(t));
  }
  if (out.unknown_coefficient == 0) throw std::logic_error("momentum equation has no new-level unknown");
  return out;
}

/// Advances interior u, v by one step from e2 = 0, e3 = 0; ghost and
/// boundary entries of the result are filled exactly at level+1.
inline std::pair<Field, Field> step_velocity(SchemeId id, const GridSpec& g, const ExactSolution& sol,
                                             const State& s) {
  const auto& def = scheme(id);
  const auto eu = explicit_update(def.equations[1], Indet::u, g);
  const auto ev = explicit_update(def.equations[2], Indet::v, g);
  Field un(g.m), vn(g.m);
  for (int j = 1; j <= g.m; ++j)
    for (int k = 1; k <= g.m; ++k) {
      un(j, k) = -evaluate(eu.rest, s, j, k) / eu.unknown_coefficient;
      vn(j, k) = -evaluate(ev.rest, s, j, k) / ev.unknown_coefficient;
      if (!std::isfinite(un(j, k)) || !std::isfinite(vn(j, k)))
        throw InstabilityError(static_cast<int>(id), s.level, j, k);
    }
  const double t = std::get<2>(coords(g, 0, 0, s.level + 1));
  fill_exact(un, Indet::u, g, sol, t, Region::ghost_and_boundary);
  fill_exact(vn, Indet::v, g, sol, t, Region::ghost_and_boundary);
  return {std::move(un), std::move(vn)};
}

inline int interior_index(const GridSpec& g, int j, int k) { return (j - 1) * g.m + (k - 1); }

/// Linear system from e4 = 0 at every interior node, with p unknown in the
/// interior. p values outside the interior are taken from the exact solution
/// at time t; the velocity terms come from u, v.
inline SparseSystem assemble_pressure(SchemeId id, const GridSpec& g, const ExactSolution& sol, const Field& u,
                                      const Field& v, double t) {
  const auto st = compile(scheme(id).equations[3], g);
  std::vector<const StencilTerm*> pressure_terms, velocity_terms;
  for (const auto& term : st) {
    bool has_p = false;
    for (const auto& f : term.factors) has_p = has_p || f.which == Indet::p;
    if (has_p) {
      if (term.factors.size() != 1 || term.factors[0].exponent != 1)
        throw std::logic_error("pressure equation is not linear in p");
      pressure_terms.push_back(&term);
    } else {
      velocity_terms.push_back(&term);
    }
  }

  State vel{u, v, Field(g.m), 0};
  SparseSystem sys(g.m * g.m);
  for (int j = 1; j <= g.m; ++j)
    for (int k = 1; k <= g.m; ++k) {
      const int row = interior_index(g, j, k);
      double rhs = 0;
      for (const auto* term : velocity_terms) rhs -= term->coefficient * evaluate_factors(*term, vel, j, k);
      for (const auto* term : pressure_terms) {
        const auto& f = term->factors[0];
        const int jj = j + f.dj, kk = k + f.dk;
        if (jj >= 1 && jj <= g.m && kk >= 1 && kk <= g.m) {
          sys.add(row, interior_index(g, jj, kk), term->coefficient);
        } else {
          auto [x, y, unused] = coords(g, jj, kk, 0);
          rhs -= term->coefficient * sol.p(x, y, t);
        }
      }
      sys.rhs[row] = rhs;
    }
  return sys;
}

}  // namespace nsfd
