#pragma once

// Text and JSON renderings of a consistency report.

#include "nsfd/consistency/consistency.hpp"

#include <json.hpp>

#include <sstream>
#include <string>

namespace nsfd {

namespace detail {

inline nlohmann::json power_json(const algebra::MeshPower& p) { return {{"h", p.first}, {"tau", p.second}}; }

inline nlohmann::json limit_json(const std::optional<EquationLimit>& l) {
  if (!l) return nullptr;
  return {{"power", power_json(l->power)}, {"equation", l->equation.to_string()}};
}

inline nlohmann::json reduction_json(const DifferentialNormalForm& nf) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& c : nf.cofactors) {
    steps.push_back({{"equation", "f" + std::to_string(c.equation + 1)},
                     {"derivative", {c.dx, c.dy, c.dt}},
                     {"coefficient", c.coefficient.to_string()},
                     {"multiplier", c.multiplier.to_string()}});
  }
  return {{"order_bound", nf.order_bound}, {"remainder", nf.remainder.to_string()}, {"steps", steps}};
}

}  // namespace detail

inline nlohmann::json to_json(const ConsistencyReport& r) {
  using nlohmann::json;
  json w = json::array();
  for (const auto& v : r.w)
    w.push_back({{"equation", v.equation},
                 {"consistent", v.consistent},
                 {"limit_exists", v.limit_exists},
                 {"limit", v.limit.to_string()},
                 {"expected", v.expected.to_string()},
                 {"truncation", v.truncation},
                 {"truncation_stable", v.truncation_stable},
                 {"limit_in_ideal", v.limit_in_ideal},
                 {"remainder", v.remainder.to_string()}});

  json out = {{"scheme", scheme_name(r.scheme)},
              {"order_bound", r.order_bound},
              {"w_consistency", w},
              {"weakly_consistent", r.weakly_consistent()},
              {"weakly_consistent_modulo_ideal", r.weakly_consistent_modulo_ideal()},
              {"s_verdict", verdict_name(r.s)},
              {"notes", r.notes}};

  if (r.certificate) {
    const auto& c = *r.certificate;
    json summands = json::array();
    for (const auto& s : c.summands)
      summands.push_back({{"label", s.label},
                          {"leading_monomial", s.leading.to_string()},
                          {"limit", detail::limit_json(s.limit)},
                          {"reduces_to_zero", s.reduces_to_zero},
                          {"reduction", detail::reduction_json(s.reduction)}});
    out["certificate"] = {{"s_polynomial", c.s.to_string()},
                          {"engine_spolynomial", c.engine_spoly.to_string()},
                          {"engine_scale", c.engine_scale.to_string()},
                          {"engine_agrees", c.engine_agrees},
                          {"identity_holds", c.identity_holds},
                          {"residual_terms", c.residual.size()},
                          {"evaluation_agrees", c.evaluation_agrees},
                          {"leading_distinct", c.leading_distinct},
                          {"summands_reduce", c.summands_reduce},
                          {"valid", c.valid()},
                          {"summands", summands}};
  }
  if (r.obstruction) {
    const auto& o = *r.obstruction;
    out["obstruction"] = {{"delta", o.delta.to_string()},
                          {"delta_terms", o.delta.size()},
                          {"delta_limit", detail::limit_json(o.delta_limit)},
                          {"delta_limit_in_ideal", o.delta_limit_in_ideal},
                          {"e1_multiples", o.e1_multiples.to_string()},
                          {"limit", detail::limit_json(o.limit)},
                          {"limit_reduction", detail::reduction_json(o.limit_reduction)},
                          {"limit_outside_ideal", o.limit_outside_ideal()},
                          {"reference_pde", o.reference.to_string()},
                          {"matches_reference", o.matches_reference()},
                          {"scalar", o.scalar ? json(o.scalar->to_string()) : json(nullptr)},
                          {"scalar_modulo_ideal",
                           o.scalar_modulo_ideal ? json(o.scalar_modulo_ideal->to_string()) : json(nullptr)},
                          {"reference_remainder", o.reference_reduction.remainder.to_string()},
                          {"reference_outside_ideal", o.reference_outside_ideal()}};
  }
  if (r.same_limit_as_sibling) out["same_limit_as_sibling"] = *r.same_limit_as_sibling;
  return out;
}

inline std::string to_text(const ConsistencyReport& r) {
  std::ostringstream os;
  auto yes = [](bool b) { return b ? "yes" : "no"; };
  os << scheme_name(r.scheme) << " consistency (order bound " << r.order_bound << ")\n";
  for (const auto& v : r.w) {
    os << "  e" << v.equation << " -> " << (v.limit_exists ? v.limit.to_string() : "(no limit)") << "\n"
       << "     equals f" << v.equation << ": " << yes(v.consistent) << ", in ideal: " << yes(v.limit_in_ideal)
       << ", K=" << v.truncation << " stable: " << yes(v.truncation_stable) << "\n";
  }
  os << "  s-consistency: " << verdict_name(r.s) << "\n";
  if (r.certificate && r.s == SVerdict::certified) {
    const auto& c = *r.certificate;
    os << "  S(e1,e2) = sum of " << c.summands.size() << " summands: exact " << yes(c.identity_holds)
       << ", by evaluation " << yes(c.evaluation_agrees) << ", distinct leading monomials "
       << yes(c.leading_distinct) << "\n";
    for (const auto& s : c.summands)
      os << "    " << s.label << "  lm " << s.leading.to_string() << "  limit "
         << (s.limit ? s.limit->equation.to_string() : "-") << "  reduces: " << yes(s.reduces_to_zero) << "\n";
  }
  if (r.obstruction) {
    const auto& o = *r.obstruction;
    os << "  delta: " << o.delta.size() << " terms\n";
    if (o.delta_limit)
      os << "  lowest part of delta (h^" << o.delta_limit->power.first << " tau^" << o.delta_limit->power.second
         << "): " << o.delta_limit->equation.to_string() << "  in ideal: " << yes(o.delta_limit_in_ideal) << "\n";
    if (o.limit) {
      os << "  after removing u*Dx(e1) + v*Dy(e1), lowest part (h^" << o.limit->power.first << " tau^"
         << o.limit->power.second << "):\n    " << o.limit->equation.to_string() << "\n"
         << "  normal form: " << o.limit_reduction.remainder.to_string() << "\n"
         << "  scalar multiple of " << o.reference.to_string() << ": "
         << (o.scalar ? o.scalar->to_string() : "no") << "\n"
         << "  reference PDE outside ideal at bound: " << yes(o.reference_outside_ideal()) << "\n";
    }
    if (r.same_limit_as_sibling) os << "  same limit as sibling scheme: " << yes(*r.same_limit_as_sibling) << "\n";
  }
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
  return os.str();
}

}  // namespace nsfd
