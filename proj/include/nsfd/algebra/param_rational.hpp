#pragma once

// Exact elements of the coefficient field Q(Re, h, tau).

#include "nsfd/algebra/param_poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace nsfd::algebra {

/// A rational function num/den in Re, h, tau.
///
/// Canonical form: gcd(num, den) = 1 and den has lex-leading coefficient 1,
/// so structural equality is field equality. Zero is 0/1.
class ParamRational {
 public:
  ParamRational() : num_(), den_(1) {}
  ParamRational(long c) : num_(c), den_(1) {}
  ParamRational(const mpq_class& c) : num_(c), den_(1) {}
  ParamRational(ParamPoly num, ParamPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("ParamRational: zero denominator");
    canonicalize();
  }

  static ParamRational symbol(Param p, int power = 1) {
    if (power >= 0) return ParamRational(ParamPoly::variable(p, power), ParamPoly(1));
    return ParamRational(ParamPoly(1), ParamPoly::variable(p, -power));
  }
  static ParamRational re() { return symbol(Param::re); }
  static ParamRational h() { return symbol(Param::h); }
  static ParamRational tau() { return symbol(Param::tau); }

  const ParamPoly& num() const { return num_; }
  const ParamPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_rational_constant() const { return num_.is_constant() && den_.is_constant(); }
  mpq_class constant_value() const { return num_.constant_value() / den_.constant_value(); }

  bool depends_on(Param p) const {
    return num_.depends_on(static_cast<int>(p)) || den_.depends_on(static_cast<int>(p));
  }

  ParamRational operator-() const {
    ParamRational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend ParamRational operator+(const ParamRational& a, const ParamRational& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return ParamRational(a.num_ + b.num_, a.den_);
    // With g = gcd of the denominators, any common factor of the new
    // numerator and denominator divides g.
    const auto g = gcd(a.den_, b.den_);
    const auto da = *ParamPoly::divide_exact(a.den_, g), db = *ParamPoly::divide_exact(b.den_, g);
    ParamPoly num = a.num_ * db + b.num_ * da;
    ParamPoly den = da * b.den_;
    return from_parts(std::move(num), std::move(den), g);
  }
  friend ParamRational operator-(const ParamRational& a, const ParamRational& b) { return a + (-b); }

  friend ParamRational operator*(const ParamRational& a, const ParamRational& b) {
    if (a.is_zero() || b.is_zero()) return ParamRational();
    if (a.is_rational_constant()) return b.scaled(a.constant_value());
    if (b.is_rational_constant()) return a.scaled(b.constant_value());
    return cross_reduced(a.num_, a.den_, b.num_, b.den_);
  }

  friend ParamRational operator/(const ParamRational& a, const ParamRational& b) {
    if (b.is_zero()) throw std::domain_error("ParamRational: division by zero");
    if (b.is_rational_constant()) return a.scaled(1 / b.constant_value());
    return cross_reduced(a.num_, a.den_, b.den_, b.num_);
  }

  ParamRational& operator+=(const ParamRational& o) { return *this = *this + o; }
  ParamRational& operator-=(const ParamRational& o) { return *this = *this - o; }
  ParamRational& operator*=(const ParamRational& o) { return *this = *this * o; }
  ParamRational& operator/=(const ParamRational& o) { return *this = *this / o; }

  ParamRational scaled(const mpq_class& s) const {
    ParamRational r;
    if (sgn(s) == 0 || is_zero()) return r;
    r.num_ = num_ * s;
    r.den_ = den_;
    return r;
  }

  ParamRational pow(int k) const {
    ParamRational r(1), base = k >= 0 ? *this : ParamRational(1) / *this;
    for (int i = 0; i < (k >= 0 ? k : -k); ++i) r *= base;
    return r;
  }

  friend bool operator==(const ParamRational& a, const ParamRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Numeric value at the given parameters.
  double evaluate(double re, double h, double tau) const {
    return eval_poly(num_, re, h, tau) / eval_poly(den_, re, h, tau);
  }

  /// Decomposition as a Laurent polynomial in (h, tau) with coefficients in
  /// Q(Re): keys are (h power, tau power). Available when the denominator
  /// factors as h^a tau^b D(Re); nullopt otherwise.
  std::optional<std::map<std::pair<int, int>, ParamRational>> mesh_laurent() const {
    std::map<std::pair<int, int>, ParamRational> out;
    if (is_zero()) return out;
    const int hv = static_cast<int>(Param::h), tv = static_cast<int>(Param::tau);
    const int dh = den_.min_degree(hv), dt = den_.min_degree(tv);
    if (den_.degree(hv) != dh || den_.degree(tv) != dt) return std::nullopt;
    ParamExponents strip{0, -dh, -dt};
    const ParamPoly den_re = den_.shifted(strip);
    std::map<std::pair<int, int>, ParamPoly> groups;
    for (const auto& [e, c] : num_.terms()) {
      ParamExponents pure{e[0], 0, 0};
      groups[{e[hv] - dh, e[tv] - dt}].add_term(pure, c);
    }
    for (auto& [k, p] : groups) out.emplace(k, ParamRational(std::move(p), den_re));
    return out;
  }

  /// Deterministic text form, parenthesised wherever it could be ambiguous
  /// as a factor.
  std::string to_string() const {
    auto wrap = [](const ParamPoly& p, bool atomic) {
      return atomic ? p.to_string() : "(" + p.to_string() + ")";
    };
    const bool num_atomic = num_.size() <= 1;
    if (den_ == ParamPoly(1)) return wrap(num_, num_atomic);
    bool den_atomic = den_.is_constant();
    if (den_.is_monomial() && den_.leading_term().second == 1) {
      int factors = 0;
      for (int v = 0; v < param_count; ++v) factors += den_.leading_term().first[v] != 0;
      den_atomic = den_atomic || factors == 1;
    }
    return wrap(num_, num_atomic) + "/" + wrap(den_, den_atomic);
  }

 private:
  static double eval_poly(const ParamPoly& p, double re, double h, double tau) {
    double s = 0;
    const double vals[param_count] = {re, h, tau};
    for (const auto& [e, c] : p.terms()) {
      double t = c.get_d();
      for (int v = 0; v < param_count; ++v)
        for (int k = 0; k < e[v]; ++k) t *= vals[v];
      s += t;
    }
    return s;
  }

  // (n1/d1) * (n2/d2) for coprime pairs (n1, d1), (n2, d2): only the cross
  // pairs can share factors.
  static ParamRational cross_reduced(const ParamPoly& n1, const ParamPoly& d1, const ParamPoly& n2,
                                     const ParamPoly& d2) {
    const auto g1 = gcd(n1, d2), g2 = gcd(n2, d1);
    ParamRational r;
    r.num_ = *ParamPoly::divide_exact(n1, g1) * *ParamPoly::divide_exact(n2, g2);
    r.den_ = *ParamPoly::divide_exact(d1, g2) * *ParamPoly::divide_exact(d2, g1);
    r.normalize_sign();
    return r;
  }

  // num/den where every common factor of num and den divides `bound`.
  static ParamRational from_parts(ParamPoly num, ParamPoly den, const ParamPoly& bound) {
    ParamRational r;
    if (num.is_zero()) return r;
    const auto g = gcd(num, bound);
    if (!g.is_constant()) {
      num = *ParamPoly::divide_exact(num, g);
      den = *ParamPoly::divide_exact(den, g);
    }
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.normalize_sign();
    return r;
  }

  void normalize_sign() {
    if (num_.is_zero()) {
      den_ = ParamPoly(1);
      return;
    }
    mpq_class lc = den_.leading_term().second;
    if (lc != 1) {
      mpq_class inv = 1 / lc;
      num_ *= inv;
      den_ *= inv;
    }
  }

  void canonicalize() {
    if (num_.is_zero()) {
      den_ = ParamPoly(1);
      return;
    }
    if (!den_.is_constant()) {
      auto g = gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = *ParamPoly::divide_exact(num_, g);
        den_ = *ParamPoly::divide_exact(den_, g);
      }
    }
    normalize_sign();
  }

  ParamPoly num_;
  ParamPoly den_;
};

}  // namespace nsfd::algebra
