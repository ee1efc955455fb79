#pragma once

#include <gmpxx.h>

#include <string>

namespace nsfd::algebra {

/// Plain rational number with the coefficient interface Polynomial expects.
struct Rational {
  mpq_class q;

  Rational() = default;
  Rational(long v) : q(v) {}
  Rational(mpq_class v) : q(std::move(v)) {}

  bool is_zero() const { return sgn(q) == 0; }
  Rational operator-() const { return Rational(mpq_class(-q)); }
  Rational& operator+=(const Rational& o) {
    q += o.q;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    q -= o.q;
    return *this;
  }
  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q + b.q)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q - b.q)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q * b.q)); }
  friend Rational operator/(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q / b.q)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q == b.q; }
  std::string to_string() const { return q.get_str(); }
};

}  // namespace nsfd::algebra
