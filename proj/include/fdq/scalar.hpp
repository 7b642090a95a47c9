#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>

#include "fdq/errors.hpp"

namespace fdq {

// Exact rational, canonical reduced form maintained by GMP.
using Rational = mpq_class;

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

inline int sign_of(const Rational& r) { return sgn(r); }

// Exact complex rational. The coefficient field of every algebra module;
// no rounding ever happens through this type.
struct Scalar {
  Rational re, im;

  Scalar() : re(0), im(0) {}
  Scalar(long long n) : re(make_rational(n)), im(0) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational r) : re(std::move(r)), im(0) {}       // NOLINT(google-explicit-constructor)
  Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }
  static Scalar i() { return Scalar(Rational(0), Rational(1)); }
  static Scalar of(long long re_num, long long re_den, long long im_num, long long im_den) {
    return Scalar(make_rational(re_num, re_den), make_rational(im_num, im_den));
  }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  bool is_imaginary() const { return re == 0; }
  bool is_one() const { return im == 0 && re == 1; }

  Scalar conj() const { return Scalar(re, -im); }

  Scalar operator-() const { return Scalar(-re, -im); }
  Scalar& operator+=(const Scalar& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }

  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    Rational n2 = b.re * b.re + b.im * b.im;
    if (n2 == 0) throw ValidationError("division by zero scalar");
    return Scalar((a.re * b.re + a.im * b.im) / n2, (a.im * b.re - a.re * b.im) / n2);
  }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar pow(unsigned n) const {
    Scalar acc = one(), base = *this;
    for (; n; n >>= 1) {
      if (n & 1) acc *= base;
      if (n > 1) base *= base;
    }
    return acc;
  }

  std::complex<double> to_double() const { return {re.get_d(), im.get_d()}; }

  // Diagnostic form, not the canonical expression syntax.
  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    if (re != 0) s += re.get_str();
    if (im != 0) {
      if (!s.empty()) s += sign_of(im) < 0 ? "-" : "+";
      else if (sign_of(im) < 0) s += "-";
      Rational a = abs(im);
      if (a != 1) s += a.get_str() + "*";
      s += "i";
    }
    return s;
  }
};

// Three-way compare for use as an ordering key (re first, then im).
inline int scalar_cmp(const Scalar& a, const Scalar& b) {
  int c = cmp(a.re, b.re);
  if (c) return c;
  return cmp(a.im, b.im);
}

}  // namespace fdq
