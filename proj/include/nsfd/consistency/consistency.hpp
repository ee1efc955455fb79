#pragma once

// Weak and strong consistency of the three schemes with the Navier-Stokes
// system: per-equation continuous limits, the S-polynomial certificate for
// FDA1 and the obstruction left over for FDA2 and FDA3.

#include "nsfd/algebra/difference.hpp"
#include "nsfd/algebra/differential.hpp"
#include "nsfd/algebra/taylor.hpp"
#include "nsfd/schemes/definitions.hpp"

#include <array>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace nsfd {

using algebra::DifferenceMonomial;
using algebra::DifferentialNormalForm;
using algebra::DifferentialPolynomial;
using algebra::EquationLimit;
using algebra::Indet;
using algebra::LimitResult;

inline constexpr int default_order_bound = 6;

using Equations = std::array<DifferencePolynomial, 4>;

inline DifferentialPolynomial monic_or_zero(const DifferentialPolynomial& p) { return p.is_zero() ? p : p.monic(); }

// ---------------------------------------------------------------------------
// w-consistency

struct EquationVerdict {
  int equation = 0;  // 1..4
  bool consistent = false;
  bool limit_exists = false;
  DifferentialPolynomial limit;
  DifferentialPolynomial expected;
  int truncation = 0;
  bool truncation_stable = false;
  // Whether the limit lies in the differential ideal of the system, checked
  // by reduction up to order_bound.
  bool limit_in_ideal = false;
  DifferentialPolynomial remainder;
  int order_bound = 0;
};

/// Agreement of two expansions on every component exact in the first.
inline bool stable_under_refinement(const LimitResult& a, const LimitResult& b) {
  if (a.limit != b.limit) return false;
  for (const auto& [p, poly] : a.expansion) {
    auto it = b.expansion.find(p);
    if (it == b.expansion.end() || it->second != poly) return false;
  }
  for (const auto& [p, poly] : b.expansion)
    if (p.first + p.second <= a.exact_through && !a.expansion.contains(p)) return false;
  return true;
}

inline std::array<EquationVerdict, 4> check_w_consistency(const Equations& e, std::optional<int> K = std::nullopt,
                                                          int order_bound = default_order_bound) {
  const auto F = algebra::navier_stokes();
  algebra::DifferentialReducer reducer(order_bound);
  std::array<EquationVerdict, 4> out;
  for (int i = 0; i < 4; ++i) {
    auto& v = out[i];
    v.equation = i + 1;
    v.truncation = K.value_or(algebra::default_truncation(e[i]));
    const auto r = algebra::taylor_limit(e[i], v.truncation);
    v.truncation_stable = stable_under_refinement(r, algebra::taylor_limit(e[i], v.truncation + 1));
    v.limit_exists = r.exists;
    v.limit = r.limit;
    v.expected = F[i];
    v.consistent = r.exists && monic_or_zero(r.limit) == monic_or_zero(F[i]);
    const auto nf = reducer.reduce(r.limit);
    v.remainder = nf.remainder;
    v.limit_in_ideal = r.exists && !r.limit.is_zero() && nf.remainder.is_zero();
    v.order_bound = order_bound;
  }
  return out;
}

inline std::array<EquationVerdict, 4> check_w_consistency(SchemeId id, std::optional<int> K = std::nullopt,
                                                          int order_bound = default_order_bound) {
  return check_w_consistency(scheme(id).equations, K, order_bound);
}

// ---------------------------------------------------------------------------
// The S-polynomial of (e1, e2) and its expression through the scheme

/// coefficient * (shift o e[equation])
struct ShiftedEquation {
  ParamRational coefficient;
  int equation = 0;  // 0..3
  Shift shift;
};

struct Summand {
  std::string label;
  std::vector<ShiftedEquation> parts;
};

inline DifferencePolynomial expand(const Summand& s, const Equations& e) {
  DifferencePolynomial r;
  for (const auto& t : s.parts) r += algebra::shift(e[t.equation], t.shift) * t.coefficient;
  return r;
}

/// S(e1, e2) = e1^{n+1}/tau - e2_{j+1,k}/(2h).
inline Summand s_polynomial_terms() {
  const auto h = ParamRational::h(), tau = ParamRational::tau();
  return {"S(e1,e2)", {{ParamRational(1) / tau, 0, {0, 0, 1}}, {-ParamRational(1) / (ParamRational(2) * h), 1, {1, 0, 0}}}};
}

/// Right-hand side of the identity S = sum of summands, with signs that make
/// it exact for the wide scheme.
inline std::vector<Summand> combination_terms() {
  const auto h = ParamRational::h(), tau = ParamRational::tau(), re = ParamRational::re();
  const auto half_h = ParamRational(1) / (ParamRational(2) * h);
  const auto lap = ParamRational(1) / (ParamRational(4) * h * h * re);
  return {
      {"e1/tau", {{ParamRational(1) / tau, 0, {0, 0, 0}}}},
      {"-e2[j-1]/(2h)", {{-half_h, 1, {-1, 0, 0}}}},
      {"(e3[k+1]-e3[k-1])/(2h)", {{half_h, 2, {0, 1, 0}}, {-half_h, 2, {0, -1, 0}}}},
      {"(1/Re)*wide-laplacian(e1)",
       {{lap, 0, {2, 0, 0}},
        {lap * ParamRational(-4), 0, {0, 0, 0}},
        {lap, 0, {-2, 0, 0}},
        {lap, 0, {0, 2, 0}},
        {lap, 0, {0, -2, 0}}}},
      {"-e4", {{ParamRational(-1), 3, {0, 0, 0}}}},
  };
}

/// The same combination transcribed with the signs as displayed in the
/// original derivation: -e1/tau + e2[j-1]/(2h) + (e3[k+1]+e3[k-1])/(2h) + ...
inline std::vector<Summand> combination_terms_as_displayed() {
  auto terms = combination_terms();
  for (auto& t : terms[0].parts) t.coefficient = -t.coefficient;
  for (auto& t : terms[1].parts) t.coefficient = -t.coefficient;
  for (auto& t : terms[2].parts)
    if (t.shift.y < 0) t.coefficient = -t.coefficient;
  return terms;
}

inline DifferencePolynomial expand(const std::vector<Summand>& terms, const Equations& e) {
  DifferencePolynomial r;
  for (const auto& s : terms) r += expand(s, e);
  return r;
}

namespace detail {

inline mpq_class pow_q(const mpq_class& b, int e) {
  mpq_class r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

inline mpq_class eval_param(const algebra::ParamPoly& p, const std::array<mpq_class, 3>& at) {
  mpq_class r = 0;
  for (const auto& [e, c] : p.terms()) {
    mpq_class t = c;
    for (int i = 0; i < 3; ++i) t *= pow_q(at[i], e[i]);
    r += t;
  }
  return r;
}

using Assignment = std::map<std::tuple<int, int, int, int>, mpq_class>;

/// Exact value of f at the node offset by `at`, reading grid values from a
/// lazily filled random assignment.
inline mpq_class eval_at(const DifferencePolynomial& f, Shift at, const std::array<mpq_class, 3>& params,
                         Assignment& values, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  mpq_class total = 0;
  for (const auto& [m, c] : f.terms()) {
    mpq_class t = eval_param(c.num(), params) / eval_param(c.den(), params);
    for (const auto& [v, e] : m.factors()) {
      const auto key = std::make_tuple(static_cast<int>(v.indet), v.shift.x + at.x, v.shift.y + at.y, v.shift.t + at.t);
      auto it = values.find(key);
      if (it == values.end()) {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        it = values.emplace(key, q).first;
      }
      t *= pow_q(it->second, e);
    }
    total += t;
  }
  return total;
}

inline mpq_class eval_summand(const Summand& s, const Equations& e, const std::array<mpq_class, 3>& params,
                              Assignment& values, std::mt19937& rng) {
  mpq_class total = 0;
  for (const auto& t : s.parts)
    total += eval_at(DifferencePolynomial(t.coefficient), {}, params, values, rng) *
             eval_at(e[t.equation], t.shift, params, values, rng);
  return total;
}

}  // namespace detail

/// Independent check of S = sum(terms): evaluates each shifted equation at
/// random rational grid values and parameters instead of shifting symbols.
inline bool identity_holds_numerically(const std::vector<Summand>& terms, const Equations& e, int trials = 5,
                                       unsigned seed = 1234) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(1, 19), den(1, 11);
  const auto S = s_polynomial_terms();
  for (int i = 0; i < trials; ++i) {
    std::array<mpq_class, 3> params;
    for (auto& q : params) {
      q = mpq_class(num(rng), den(rng));
      q.canonicalize();
    }
    detail::Assignment values;
    mpq_class rhs = 0;
    for (const auto& s : terms) rhs += detail::eval_summand(s, e, params, values, rng);
    if (detail::eval_summand(S, e, params, values, rng) != rhs) return false;
  }
  return true;
}

struct SummandEvidence {
  std::string label;
  DifferencePolynomial value;
  DifferenceMonomial leading;  // after the common normalizing shift
  std::optional<EquationLimit> limit;
  bool reduces_to_zero = false;
  DifferentialNormalForm reduction;
};

struct SCertificate {
  SchemeId scheme = SchemeId::fda1;
  DifferencePolynomial s;             // e1^{n+1}/tau - e2_{j+1}/(2h)
  DifferencePolynomial engine_spoly;  // the generic S-polynomial routine on (e1, e2)
  bool engine_agrees = false;         // engine_spoly is a scalar multiple of s
  ParamRational engine_scale;
  std::vector<SummandEvidence> summands;
  DifferencePolynomial residual;  // s - sum of summands
  bool identity_holds = false;
  bool evaluation_agrees = false;
  bool leading_distinct = false;
  bool summands_reduce = false;
  int order_bound = 0;

  bool valid() const { return engine_agrees && identity_holds && evaluation_agrees && leading_distinct && summands_reduce; }
};

inline SCertificate certify_s_consistency(SchemeId id, int order_bound = default_order_bound) {
  const auto& e = scheme(id).equations;
  SCertificate c;
  c.scheme = id;
  c.order_bound = order_bound;
  c.s = expand(s_polynomial_terms(), e);

  if (const auto sp = algebra::spoly(e[0], e[1])) {
    c.engine_spoly = sp->value;
    if (!c.s.is_zero() && !sp->value.is_zero()) {
      c.engine_scale = sp->value.leading_coefficient() / c.s.leading_coefficient();
      c.engine_agrees = sp->value == c.s * c.engine_scale;
    }
  }

  const auto terms = combination_terms();
  DifferencePolynomial sum;
  std::vector<DifferencePolynomial> values;
  for (const auto& t : terms) {
    values.push_back(expand(t, e));
    sum += values.back();
  }
  c.residual = c.s - sum;
  c.identity_holds = c.residual.is_zero();
  c.evaluation_agrees = identity_holds_numerically(terms, e);

  // Leading monomials are compared after one common forward shift.
  Shift common{};
  for (const auto& v : values) {
    const Shift s = algebra::normalizing_shift(v);
    common = {std::max(common.x, s.x), std::max(common.y, s.y), std::max(common.t, s.t)};
  }

  algebra::DifferentialReducer reducer(order_bound);
  c.summands_reduce = true;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    SummandEvidence ev;
    ev.label = terms[i].label;
    ev.value = values[i];
    if (!values[i].is_zero()) ev.leading = algebra::shift(values[i], common).leading_monomial();
    ev.limit = algebra::equation_limit(algebra::taylor_limit(values[i]));
    if (ev.limit) {
      ev.reduction = reducer.reduce(ev.limit->equation);
      ev.reduces_to_zero = ev.reduction.remainder.is_zero();
    }
    c.summands_reduce = c.summands_reduce && ev.reduces_to_zero;
    c.summands.push_back(std::move(ev));
  }
  c.leading_distinct = true;
  for (std::size_t i = 0; i < c.summands.size(); ++i)
    for (std::size_t j = i + 1; j < c.summands.size(); ++j)
      if (c.summands[i].leading == c.summands[j].leading) c.leading_distinct = false;
  return c;
}

inline SCertificate certify_s_consistency_fda1(int order_bound = default_order_bound) {
  return certify_s_consistency(SchemeId::fda1, order_bound);
}

// ---------------------------------------------------------------------------
// Obstruction for the compact schemes

/// 2vv_yyyy + 8v_y v_yyy + 6v_yy^2 + 2uu_xxxx + 8u_x u_xxx + 6u_xx^2 + p_yyyy + p_xxxx
inline DifferentialPolynomial reference_obstruction_pde() {
  using algebra::jet;
  const auto u = [](int x) { return jet(Indet::u, x, 0, 0); };
  const auto v = [](int y) { return jet(Indet::v, 0, y, 0); };
  const auto k = [](long c) { return ParamRational(c); };
  return v(0) * v(4) * k(2) + v(1) * v(3) * k(8) + v(2) * v(2) * k(6) + u(0) * u(4) * k(2) + u(1) * u(3) * k(8) +
         u(2) * u(2) * k(6) + jet(Indet::p, 0, 4, 0) + jet(Indet::p, 4, 0, 0);
}

struct Obstruction {
  SchemeId scheme = SchemeId::fda2;
  DifferencePolynomial delta;         // S minus the combination built from this scheme
  DifferencePolynomial e1_multiples;  // u D_x e1 + v D_y e1
  DifferencePolynomial delta_prime;   // delta + e1_multiples
  std::optional<EquationLimit> delta_limit;  // lowest part of delta
  bool delta_limit_in_ideal = false;
  std::optional<EquationLimit> limit;  // lowest part of delta_prime
  DifferentialNormalForm limit_reduction;
  DifferentialPolynomial reference;
  std::optional<ParamRational> scalar;  // limit = scalar * reference
  DifferentialNormalForm reference_reduction;
  // limit and reference agree modulo the ideal up to a scalar, at the bound
  std::optional<ParamRational> scalar_modulo_ideal;
  int order_bound = 0;

  bool delta_nonzero() const { return !delta.is_zero(); }
  bool limit_outside_ideal() const { return limit && !limit_reduction.remainder.is_zero(); }
  bool reference_outside_ideal() const { return !reference_reduction.remainder.is_zero(); }
  bool matches_reference() const { return scalar.has_value(); }
};

inline Obstruction extract_obstruction(SchemeId id, int order_bound = default_order_bound) {
  const auto& e = scheme(id).equations;
  Obstruction o;
  o.scheme = id;
  o.order_bound = order_bound;
  o.delta = expand(s_polynomial_terms(), e) - expand(combination_terms(), e);
  const auto u = algebra::var(Indet::u), v = algebra::var(Indet::v);
  o.e1_multiples = u * ops::dx()(e[0]) + v * ops::dy()(e[0]);
  o.delta_prime = o.delta + o.e1_multiples;
  o.reference = reference_obstruction_pde();

  algebra::DifferentialReducer reducer(order_bound);
  o.reference_reduction = reducer.reduce(o.reference);
  if (o.delta.is_zero()) return o;

  o.delta_limit = algebra::equation_limit(algebra::taylor_limit(o.delta));
  if (o.delta_limit) o.delta_limit_in_ideal = reducer.reduce(o.delta_limit->equation).remainder.is_zero();
  if (o.delta_prime.is_zero()) return o;
  o.limit = algebra::equation_limit(algebra::taylor_limit(o.delta_prime));
  if (!o.limit) return o;
  o.limit_reduction = reducer.reduce(o.limit->equation);
  o.scalar = algebra::proportionality(o.limit->equation, o.reference);
  o.scalar_modulo_ideal = algebra::proportionality(o.limit_reduction.remainder, o.reference_reduction.remainder);
  return o;
}

// ---------------------------------------------------------------------------
// Full report

enum class SVerdict { certified, obstructed, undetermined };

inline const char* verdict_name(SVerdict v) {
  switch (v) {
    case SVerdict::certified: return "certified-consistent";
    case SVerdict::obstructed: return "obstructed";
    case SVerdict::undetermined: return "undetermined";
  }
  return "?";
}

struct ConsistencyReport {
  SchemeId scheme = SchemeId::fda1;
  int order_bound = 0;
  std::array<EquationVerdict, 4> w;
  SVerdict s = SVerdict::undetermined;
  std::optional<SCertificate> certificate;
  std::optional<Obstruction> obstruction;
  // For FDA2/FDA3: whether the sibling scheme yields the same limit PDE.
  std::optional<bool> same_limit_as_sibling;
  std::vector<std::string> notes;

  bool weakly_consistent() const {
    for (const auto& v : w)
      if (!v.consistent) return false;
    return true;
  }
  bool weakly_consistent_modulo_ideal() const {
    for (const auto& v : w)
      if (!v.consistent && !v.limit_in_ideal) return false;
    return true;
  }
};

inline ConsistencyReport full_report(SchemeId id, int order_bound = default_order_bound) {
  ConsistencyReport r;
  r.scheme = id;
  r.order_bound = order_bound;
  r.w = check_w_consistency(id, std::nullopt, order_bound);
  if (id == SchemeId::fda1)
    r.notes.push_back("e3 is read as Dt v + Dx(uv) + Dy(v^2) + Dy p - lap(v)/Re (missing '+' restored)");
  r.notes.push_back("S(e1,e2) = e1[n+1]/tau - e2[j+1]/(2h); combination signs chosen to make the wide-scheme identity exact");
  r.notes.push_back("ideal membership is evidence up to derivative order " + std::to_string(order_bound) +
                    ", not a proof of non-membership");

  auto cert = certify_s_consistency(id, order_bound);
  if (cert.valid()) {
    r.s = SVerdict::certified;
    r.certificate = std::move(cert);
    return r;
  }
  r.certificate = std::move(cert);
  auto obs = extract_obstruction(id, order_bound);
  if (obs.delta_nonzero() && obs.limit && obs.limit_outside_ideal()) r.s = SVerdict::obstructed;
  if (id != SchemeId::fda1) {
    const SchemeId sibling = id == SchemeId::fda2 ? SchemeId::fda3 : SchemeId::fda2;
    const auto other = extract_obstruction(sibling, order_bound);
    r.same_limit_as_sibling = obs.limit.has_value() == other.limit.has_value() &&
                              (!obs.limit || (obs.limit->power == other.limit->power &&
                                              obs.limit->equation == other.limit->equation));
  }
  r.obstruction = std::move(obs);
  return r;
}

}  // namespace nsfd
