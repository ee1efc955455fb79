#pragma once

// Generic sparse commutative polynomials over an ordered set of variables.
//
// `Rank` is a stateless strict total order on `Var` (a ranking). Monomials keep
// their factors sorted from the highest-ranked variable down, and monomials are
// compared lexicographically over the ranking: the monomial with the larger
// exponent at the highest variable where the two differ is larger. The terms of
// a Polynomial are stored in that order, so the leading term is the last one.

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace nsfd::algebra {

template <class Var, class Rank>
class Monomial {
 public:
  using Factor = std::pair<Var, int>;

  Monomial() = default;
  explicit Monomial(const Var& v, int e = 1) {
    if (e > 0) factors_.emplace_back(v, e);
  }
  static Monomial from_factors(std::vector<Factor> fs) {
    std::sort(fs.begin(), fs.end(), [](const Factor& a, const Factor& b) { return Rank{}(b.first, a.first); });
    Monomial m;
    for (auto& f : fs) {
      if (f.second <= 0) continue;
      if (!m.factors_.empty() && m.factors_.back().first == f.first)
        m.factors_.back().second += f.second;
      else
        m.factors_.push_back(std::move(f));
    }
    return m;
  }

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
  }

  int exponent(const Var& v) const {
    for (const auto& f : factors_)
      if (f.first == v) return f.second;
    return 0;
  }

  /// Highest-ranked variable; precondition: not 1.
  const Var& leader() const {
    assert(!factors_.empty());
    return factors_.front().first;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin(), j = b.factors_.begin();
    Rank less;
    while (i != a.factors_.end() && j != b.factors_.end()) {
      if (i->first == j->first) {
        r.factors_.emplace_back(i->first, i->second + j->second);
        ++i, ++j;
      } else if (less(j->first, i->first)) {
        r.factors_.push_back(*i++);
      } else {
        r.factors_.push_back(*j++);
      }
    }
    r.factors_.insert(r.factors_.end(), i, a.factors_.end());
    r.factors_.insert(r.factors_.end(), j, b.factors_.end());
    return r;
  }

  /// Ordinary divisibility of commutative monomials.
  bool divides(const Monomial& b) const {
    for (const auto& [v, e] : factors_)
      if (b.exponent(v) < e) return false;
    return true;
  }

  /// b / *this; precondition: divides(b).
  Monomial quotient_of(const Monomial& b) const {
    Monomial r;
    for (const auto& [v, e] : b.factors_) {
      int d = e - exponent(v);
      assert(d >= 0);
      if (d > 0) r.factors_.emplace_back(v, d);
    }
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    std::vector<Factor> fs = a.factors_;
    for (const auto& [v, e] : b.factors_) {
      auto it = std::find_if(fs.begin(), fs.end(), [&](const Factor& f) { return f.first == v; });
      if (it == fs.end())
        fs.emplace_back(v, e);
      else
        it->second = std::max(it->second, e);
    }
    return from_factors(std::move(fs));
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (const auto& [v, e] : a.factors_)
      if (b.exponent(v) > 0) return false;
    return true;
  }

  /// Applies `fn` to every variable (e.g. a shift) and re-sorts.
  template <class Fn>
  Monomial map_vars(Fn&& fn) const {
    std::vector<Factor> fs;
    fs.reserve(factors_.size());
    for (const auto& [v, e] : factors_) fs.emplace_back(fn(v), e);
    return from_factors(std::move(fs));
  }

  /// Lexicographic comparison over the ranking: -1, 0, +1.
  friend int lex_compare(const Monomial& a, const Monomial& b) {
    Rank less;
    const std::size_t n = std::min(a.factors_.size(), b.factors_.size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto& fa = a.factors_[i];
      const auto& fb = b.factors_[i];
      if (!(fa.first == fb.first)) return less(fb.first, fa.first) ? 1 : -1;
      if (fa.second != fb.second) return fa.second > fb.second ? 1 : -1;
    }
    if (a.factors_.size() == b.factors_.size()) return 0;
    return a.factors_.size() > b.factors_.size() ? 1 : -1;
  }

  friend bool operator<(const Monomial& a, const Monomial& b) { return lex_compare(a, b) < 0; }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

  std::string to_string() const {
    if (factors_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, e] : factors_) {
      if (!first) os << "*";
      first = false;
      os << v.to_string();
      if (e != 1) os << "^" << e;
    }
    return os.str();
  }

 private:
  std::vector<Factor> factors_;
};

template <class Var, class Coeff, class Rank>
class Polynomial {
 public:
  using Mono = Monomial<Var, Rank>;
  using TermMap = std::map<Mono, Coeff>;

  Polynomial() = default;
  Polynomial(const Coeff& c) { add_term(Mono(), c); }
  explicit Polynomial(const Var& v) { add_term(Mono(v), Coeff(1)); }
  Polynomial(const Mono& m, const Coeff& c) { add_term(m, c); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Mono& m, const Coeff& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Coeff coefficient(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff() : it->second;
  }

  /// Leading term (largest monomial); precondition: nonzero.
  const std::pair<const Mono, Coeff>& leading_term() const {
    assert(!terms_.empty());
    return *terms_.rbegin();
  }
  const Mono& leading_monomial() const { return leading_term().first; }
  const Coeff& leading_coefficient() const { return leading_term().second; }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return *this * (Coeff(1) / leading_coefficient());
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  template <class Fn>
  Polynomial map_vars(Fn&& fn) const {
    Polynomial r;
    for (const auto& [m, c] : terms_) r.add_term(m.map_vars(fn), c);
    return r;
  }

  template <class Fn>
  Polynomial map_coefficients(Fn&& fn) const {
    Polynomial r;
    for (const auto& [m, c] : terms_) r.add_term(m, fn(c));
    return r;
  }

  template <class Fn>
  void for_each_var(Fn&& fn) const {
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m.factors()) fn(v);
  }

  Polynomial operator-() const {
    Polynomial r;
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Coeff& s) {
    Polynomial r;
    if (s.is_zero()) return r;
    for (const auto& [m, c] : a.terms_) r.add_term(m, c * s);
    return r;
  }
  friend Polynomial operator*(const Coeff& s, const Polynomial& a) { return a * s; }
  friend Polynomial operator/(const Polynomial& a, const Coeff& s) { return a * (Coeff(1) / s); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  /// Multiply by a single term c*m.
  Polynomial times_term(const Mono& m, const Coeff& c) const {
    Polynomial r;
    if (c.is_zero()) return r;
    for (const auto& [mm, cc] : terms_) r.add_term(mm * m, cc * c);
    return r;
  }

  Polynomial pow(int k) const {
    Polynomial r(Coeff(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  /// Text form, terms in decreasing order.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      const auto& [m, c] = *it;
      if (m.is_one()) {
        os << c.to_string();
      } else if (c == Coeff(1)) {
        os << m.to_string();
      } else if (c == Coeff(-1)) {
        os << "-" << m.to_string();
      } else {
        os << c.to_string() << "*" << m.to_string();
      }
    }
    return os.str();
  }

 private:
  TermMap terms_;
};

}  // namespace nsfd::algebra
