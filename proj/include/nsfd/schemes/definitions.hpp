#pragma once

// The three finite difference approximations, written once as exact
// difference polynomials. Both the numerical solver and the symbolic
// analysis read them from here.

#include "nsfd/algebra/difference.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nsfd {

using algebra::DifferencePolynomial;
using algebra::ParamRational;
using algebra::Shift;

enum class SchemeId { fda1 = 1, fda2 = 2, fda3 = 3 };

inline constexpr std::array<SchemeId, 3> all_schemes{SchemeId::fda1, SchemeId::fda2, SchemeId::fda3};

inline std::string scheme_name(SchemeId id) { return "FDA" + std::to_string(static_cast<int>(id)); }

inline SchemeId scheme_from_int(int i) {
  if (i < 1 || i > 3) throw std::invalid_argument("scheme must be 1, 2 or 3");
  return static_cast<SchemeId>(i);
}

/// A linear difference operator sum(c_s * sigma^s).
class LinearStencil {
 public:
  LinearStencil() = default;
  LinearStencil(std::initializer_list<std::pair<Shift, ParamRational>> taps) : taps_(taps) {}

  const std::vector<std::pair<Shift, ParamRational>>& taps() const { return taps_; }

  DifferencePolynomial operator()(const DifferencePolynomial& f) const {
    DifferencePolynomial r;
    for (const auto& [s, c] : taps_) r += algebra::shift(f, s) * c;
    return r;
  }

  friend LinearStencil operator*(const LinearStencil& a, const LinearStencil& b) {
    LinearStencil r;
    for (const auto& [sa, ca] : a.taps_)
      for (const auto& [sb, cb] : b.taps_) r.add(sa + sb, ca * cb);
    return r;
  }
  friend LinearStencil operator+(LinearStencil a, const LinearStencil& b) {
    for (const auto& [s, c] : b.taps_) a.add(s, c);
    return a;
  }
  friend LinearStencil operator*(const ParamRational& k, LinearStencil a) {
    for (auto& [s, c] : a.taps_) c = k * c;
    return a;
  }

 private:
  void add(Shift s, const ParamRational& c) {
    for (auto it = taps_.begin(); it != taps_.end(); ++it)
      if (it->first == s) {
        it->second += c;
        if (it->second.is_zero()) taps_.erase(it);
        return;
      }
    taps_.emplace_back(s, c);
  }

  std::vector<std::pair<Shift, ParamRational>> taps_;
};

namespace ops {

inline ParamRational inv_h(int k = 1) { return ParamRational::symbol(algebra::Param::h, -k); }
inline ParamRational inv_re() { return ParamRational::symbol(algebra::Param::re, -1); }

/// Central first differences over 2h, forward time difference.
inline LinearStencil dx() { return {{{1, 0, 0}, inv_h() / 2}, {{-1, 0, 0}, -inv_h() / 2}}; }
inline LinearStencil dy() { return {{{0, 1, 0}, inv_h() / 2}, {{0, -1, 0}, -inv_h() / 2}}; }
inline LinearStencil dt() {
  const auto inv_tau = ParamRational::symbol(algebra::Param::tau, -1);
  return {{{0, 0, 1}, inv_tau}, {{0, 0, 0}, -inv_tau}};
}

/// Compact second differences over h^2.
inline LinearStencil dxx_compact() {
  return {{{1, 0, 0}, inv_h(2)}, {{0, 0, 0}, ParamRational(-2) * inv_h(2)}, {{-1, 0, 0}, inv_h(2)}};
}
inline LinearStencil dyy_compact() {
  return {{{0, 1, 0}, inv_h(2)}, {{0, 0, 0}, ParamRational(-2) * inv_h(2)}, {{0, -1, 0}, inv_h(2)}};
}

/// Wide second differences (spacing 2h), i.e. dx applied twice.
inline LinearStencil dxx_wide() { return dx() * dx(); }
inline LinearStencil dyy_wide() { return dy() * dy(); }

inline LinearStencil laplacian_compact() { return dxx_compact() + dyy_compact(); }
inline LinearStencil laplacian_wide() { return dxx_wide() + dyy_wide(); }

}  // namespace ops

struct SchemeDef {
  SchemeId id;
  std::array<DifferencePolynomial, 4> equations;  // e1..e4 about the node (j, k, n)
  LinearStencil viscous;                          // the Laplacian used in e2, e3
};

inline SchemeDef build_scheme(SchemeId id) {
  using algebra::Indet;
  using algebra::var;
  const auto u = var(Indet::u), v = var(Indet::v), p = var(Indet::p);
  const auto dx = ops::dx(), dy = ops::dy(), dt = ops::dt();
  const ParamRational nu = ops::inv_re();

  SchemeDef s{id, {}, {}};
  s.equations[0] = dx(u) + dy(v);
  if (id == SchemeId::fda1) {
    s.viscous = ops::laplacian_wide();
    s.equations[1] = dt(u) + dx(u * u) + dy(u * v) + dx(p) - s.viscous(u) * nu;
    s.equations[2] = dt(v) + dx(u * v) + dy(v * v) + dy(p) - s.viscous(v) * nu;
    s.equations[3] = ops::dxx_wide()(u * u) + ops::dyy_wide()(v * v) + (dx * dy)(u * v) * ParamRational(2) +
                     s.viscous(p);
  } else {
    // FDA2 and FDA3 are displayed with identical stencils.
    s.viscous = ops::laplacian_compact();
    s.equations[1] = dt(u) + u * dx(u) + v * dy(u) + dx(p) - s.viscous(u) * nu;
    s.equations[2] = dt(v) + u * dx(v) + v * dy(v) + dy(p) - s.viscous(v) * nu;
    s.equations[3] = dx(u) * dx(u) + dx(v) * dy(u) * ParamRational(2) + dy(v) * dy(v) + s.viscous(p);
  }
  return s;
}

inline const SchemeDef& scheme(SchemeId id) {
  static const std::array<SchemeDef, 3> defs{build_scheme(SchemeId::fda1), build_scheme(SchemeId::fda2),
                                             build_scheme(SchemeId::fda3)};
  return defs[static_cast<int>(id) - 1];
}

/// The FDA as forward-shifted, monic difference polynomials.
struct EncodedFda {
  SchemeId id;
  std::array<DifferencePolynomial, 4> raw;
  std::array<DifferencePolynomial, 4> normalized;  // monic, nonnegative shifts
  std::array<Shift, 4> shifts;                      // normalization shift applied to raw[i]
};

inline EncodedFda encode_fda(SchemeId id) {
  const auto& def = scheme(id);
  EncodedFda out{id, def.equations, {}, {}};
  for (int i = 0; i < 4; ++i) {
    out.shifts[i] = algebra::normalizing_shift(out.raw[i]);
    out.normalized[i] = algebra::shift(out.raw[i], out.shifts[i]).monic();
  }
  return out;
}

}  // namespace nsfd
