#pragma once

// Multivariate polynomials over Q in the three problem parameters Re, h, tau.
// These are the numerators and denominators of ParamRational coefficients.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace nsfd::algebra {

enum class Param : std::uint8_t { re = 0, h = 1, tau = 2 };

inline constexpr int param_count = 3;

inline const char* param_name(int v) {
  static constexpr const char* names[param_count] = {"Re", "h", "tau"};
  return names[v];
}

using ParamExponents = std::array<int, param_count>;

/// Sparse polynomial in Q[Re, h, tau]. Terms are kept in a map ordered
/// lexicographically on (Re, h, tau) exponents; the last entry is the
/// lex-leading term.
class ParamPoly {
 public:
  using TermMap = std::map<ParamExponents, mpq_class>;

  ParamPoly() = default;
  ParamPoly(long c) { add_term({0, 0, 0}, mpq_class(c)); }
  ParamPoly(const mpq_class& c) { add_term({0, 0, 0}, c); }

  static ParamPoly variable(Param p, int power = 1) {
    ParamExponents e{0, 0, 0};
    e[static_cast<int>(p)] = power;
    ParamPoly r;
    r.add_term(e, mpq_class(1));
    return r;
  }

  static ParamPoly monomial(const ParamExponents& e, const mpq_class& c) {
    ParamPoly r;
    r.add_term(e, c);
    return r;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == ParamExponents{0, 0, 0});
  }
  bool is_monomial() const { return terms_.size() == 1; }

  mpq_class constant_value() const {
    if (terms_.empty()) return 0;
    assert(is_constant());
    return terms_.begin()->second;
  }

  const std::pair<const ParamExponents, mpq_class>& leading_term() const {
    assert(!terms_.empty());
    return *terms_.rbegin();
  }

  void add_term(const ParamExponents& e, const mpq_class& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  int degree(int v) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
    return d;
  }

  int min_degree(int v) const {
    if (terms_.empty()) return 0;
    int d = terms_.begin()->first[v];
    for (const auto& [e, c] : terms_) d = std::min(d, e[v]);
    return d;
  }

  ParamExponents min_exponents() const {
    ParamExponents m{0, 0, 0};
    for (int v = 0; v < param_count; ++v) m[v] = min_degree(v);
    return m;
  }

  bool depends_on(int v) const {
    for (const auto& [e, c] : terms_)
      if (e[v] != 0) return true;
    return false;
  }

  int highest_variable() const {
    for (int v = param_count - 1; v >= 0; --v)
      if (depends_on(v)) return v;
    return -1;
  }

  /// Coefficient of v^k, as a polynomial free of v.
  ParamPoly coefficient(int v, int k) const {
    ParamPoly r;
    for (const auto& [e, c] : terms_) {
      if (e[v] != k) continue;
      auto f = e;
      f[v] = 0;
      r.terms_.emplace(f, c);
    }
    return r;
  }

  ParamPoly shifted(const ParamExponents& by) const {
    ParamPoly r;
    for (const auto& [e, c] : terms_) {
      ParamExponents f{};
      for (int v = 0; v < param_count; ++v) {
        f[v] = e[v] + by[v];
        if (f[v] < 0) throw std::domain_error("ParamPoly::shifted: negative exponent");
      }
      r.terms_.emplace(f, c);
    }
    return r;
  }

  ParamPoly operator-() const {
    ParamPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  ParamPoly& operator+=(const ParamPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  ParamPoly& operator-=(const ParamPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  ParamPoly& operator*=(const mpq_class& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator*(ParamPoly a, const mpq_class& s) { return a *= s; }

  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        ParamExponents e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
        r.add_term(e, ca * cb);
      }
    return r;
  }

  friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.terms_ == b.terms_; }

  /// Exact quotient a / b, or nullopt when b does not divide a.
  static std::optional<ParamPoly> divide_exact(const ParamPoly& a, const ParamPoly& b) {
    if (b.is_zero()) throw std::domain_error("ParamPoly::divide_exact: division by zero");
    ParamPoly q, r = a;
    const auto& [lb_e, lb_c] = b.leading_term();
    while (!r.is_zero()) {
      const auto& [lr_e, lr_c] = r.leading_term();
      ParamExponents d{};
      for (int v = 0; v < param_count; ++v) {
        d[v] = lr_e[v] - lb_e[v];
        if (d[v] < 0) return std::nullopt;
      }
      mpq_class c = lr_c / lb_c;
      auto t = monomial(d, c);
      q += t;
      r -= t * b;
    }
    return q;
  }

  /// Scale so that the lex-leading coefficient is 1.
  ParamPoly monic() const {
    if (is_zero()) return *this;
    mpq_class lc = leading_term().second;
    return *this * mpq_class(1 / lc);
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      mpq_class mag = abs(c);
      bool unit = (e != ParamExponents{0, 0, 0});
      if (first) {
        if (sgn(c) < 0) os << "-";
      } else {
        os << (sgn(c) < 0 ? " - " : " + ");
      }
      first = false;
      bool wrote = false;
      if (!unit || mag != 1) {
        os << mag.get_str();
        wrote = true;
      }
      for (int v = 0; v < param_count; ++v) {
        if (e[v] == 0) continue;
        if (wrote) os << "*";
        os << param_name(v);
        if (e[v] != 1) os << "^" << e[v];
        wrote = true;
      }
    }
    return os.str();
  }

 private:
  TermMap terms_;
};

namespace detail {

ParamPoly gcd_recursive(const ParamPoly& a, const ParamPoly& b);

/// gcd of all coefficients of `a` viewed as a polynomial in v.
inline ParamPoly content_in(const ParamPoly& a, int v) {
  ParamPoly g;
  for (int k = a.degree(v); k >= 0; --k) {
    auto c = a.coefficient(v, k);
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd_recursive(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

inline ParamPoly primitive_part_in(const ParamPoly& a, int v) {
  if (a.is_zero()) return a;
  auto c = content_in(a, v);
  auto q = ParamPoly::divide_exact(a, c);
  assert(q);
  // Rational content is a unit; scaling it away keeps coefficients small.
  return q->monic();
}

/// Pseudo-remainder of a by b with respect to v.
inline ParamPoly pseudo_remainder(ParamPoly a, const ParamPoly& b, int v) {
  const int db = b.degree(v);
  const auto lcb = b.coefficient(v, db);
  ParamExponents unit{0, 0, 0};
  while (!a.is_zero() && a.degree(v) >= db) {
    const int da = a.degree(v);
    auto lca = a.coefficient(v, da);
    unit[v] = da - db;
    a = lcb * a - lca * b.shifted(unit);
  }
  return a;
}

using UniPoly = std::map<int, mpq_class>;

/// Image of `a` as a univariate polynomial in v, other variables set to `at`.
inline UniPoly univariate_image(const ParamPoly& a, int v, const ParamExponents& at) {
  UniPoly r;
  for (const auto& [e, c] : a.terms()) {
    mpq_class t = c;
    for (int w = 0; w < param_count; ++w)
      if (w != v)
        for (int k = 0; k < e[w]; ++k) t *= at[w];
    r[e[v]] += t;
  }
  std::erase_if(r, [](const auto& kv) { return sgn(kv.second) == 0; });
  return r;
}

inline int univariate_gcd_degree(UniPoly a, UniPoly b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    const auto [db, lb] = *b.rbegin();
    while (!a.empty() && a.rbegin()->first >= db) {
      const auto [da, la] = *a.rbegin();
      const mpq_class q = la / lb;
      for (const auto& [k, c] : b) {
        auto& slot = a[k + da - db];
        slot -= q * c;
        if (sgn(slot) == 0) a.erase(k + da - db);
      }
    }
    std::swap(a, b);
  }
  return a.empty() ? -1 : a.rbegin()->first;
}

/// True when gcd(a, b) certainly has degree 0 in v: the images under an
/// evaluation that keeps both leading degrees have a constant gcd.
inline bool coprime_in(const ParamPoly& a, const ParamPoly& b, int v) {
  static constexpr int points[3][param_count] = {{3, 5, 7}, {11, 2, 13}, {-4, 17, 6}};
  for (const auto& pt : points) {
    const ParamExponents at{pt[0], pt[1], pt[2]};
    const auto ia = univariate_image(a, v, at), ib = univariate_image(b, v, at);
    if (ia.empty() || ib.empty() || ia.rbegin()->first != a.degree(v) || ib.rbegin()->first != b.degree(v)) continue;
    return univariate_gcd_degree(ia, ib) == 0;
  }
  return false;
}

inline ParamPoly gcd_recursive(const ParamPoly& a, const ParamPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return ParamPoly(1);
  if (a.is_monomial() || b.is_monomial()) {
    // gcd with a monomial is the common power product.
    auto ma = a.min_exponents(), mb = b.min_exponents();
    ParamExponents g{};
    for (int v = 0; v < param_count; ++v) g[v] = std::min(ma[v], mb[v]);
    return ParamPoly::monomial(g, 1);
  }
  const int v = std::max(a.highest_variable(), b.highest_variable());
  if (!a.depends_on(v)) return gcd_recursive(a, content_in(b, v));
  if (!b.depends_on(v)) return gcd_recursive(content_in(a, v), b);

  const auto ca = content_in(a, v), cb = content_in(b, v);
  if (coprime_in(a, b, v)) return gcd_recursive(ca, cb);
  auto pa = *ParamPoly::divide_exact(a, ca);
  auto pb = *ParamPoly::divide_exact(b, cb);
  const auto c = gcd_recursive(ca, cb);
  if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
  while (!pb.is_zero()) {
    auto r = pseudo_remainder(pa, pb, v);
    pa = std::move(pb);
    if (r.is_zero()) break;
    if (!r.depends_on(v)) {
      pa = ParamPoly(1);
      break;
    }
    pb = primitive_part_in(r, v);
  }
  return (c * primitive_part_in(pa, v)).monic();
}

}  // namespace detail

/// Monic greatest common divisor (gcd(0, 0) = 0).
inline ParamPoly gcd(const ParamPoly& a, const ParamPoly& b) {
  if (a.is_zero() && b.is_zero()) return ParamPoly();
  return detail::gcd_recursive(a, b);
}

}  // namespace nsfd::algebra
