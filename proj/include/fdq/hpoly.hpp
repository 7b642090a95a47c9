#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fdq/scalar.hpp"

namespace fdq {

// Polynomial in the formal deformation symbol h with exact complex-rational
// coefficients. Dense in ascending powers, always trimmed so the top
// coefficient is nonzero (the zero polynomial has an empty vector).
class HPoly {
 public:
  HPoly() = default;
  HPoly(Scalar c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) c_.push_back(std::move(c));
  }
  HPoly(long long n) : HPoly(Scalar(n)) {}  // NOLINT(google-explicit-constructor)

  static HPoly h(unsigned power = 1, Scalar c = Scalar::one()) {
    HPoly p;
    if (c.is_zero()) return p;
    p.c_.assign(power + 1, Scalar::zero());
    p.c_[power] = std::move(c);
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is -1 by convention.
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  const Scalar& coeff(std::size_t k) const {
    static const Scalar kZero;
    return k < c_.size() ? c_[k] : kZero;
  }

  void set_coeff(std::size_t k, Scalar v) {
    if (k >= c_.size()) {
      if (v.is_zero()) return;
      c_.resize(k + 1, Scalar::zero());
    }
    c_[k] = std::move(v);
    trim();
  }

  HPoly operator-() const {
    HPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  HPoly& operator+=(const HPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar::zero());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  HPoly& operator-=(const HPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar::zero());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  HPoly& operator*=(const HPoly& o) { return *this = *this * o; }

  friend HPoly operator+(HPoly a, const HPoly& b) { return a += b; }
  friend HPoly operator-(HPoly a, const HPoly& b) { return a -= b; }

  friend HPoly operator*(const HPoly& a, const HPoly& b) {
    HPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Scalar::zero());
    for (std::size_t j = 0; j < a.c_.size(); ++j)
      for (std::size_t k = 0; k < b.c_.size(); ++k) r.c_[j + k] += a.c_[j] * b.c_[k];
    r.trim();
    return r;
  }

  friend bool operator==(const HPoly& a, const HPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const HPoly& a, const HPoly& b) { return !(a == b); }

  HPoly conj() const {
    HPoly r = *this;
    for (auto& c : r.c_) c = c.conj();
    return r;
  }

  HPoly pow(unsigned n) const {
    HPoly acc = Scalar::one(), base = *this;
    for (; n; n >>= 1) {
      if (n & 1) acc *= base;
      if (n > 1) base *= base;
    }
    return acc;
  }

  // Multiply by h^k.
  HPoly shifted(unsigned k) const {
    if (is_zero() || k == 0) return *this;
    HPoly r;
    r.c_.assign(c_.size() + k, Scalar::zero());
    for (std::size_t j = 0; j < c_.size(); ++j) r.c_[j + k] = c_[j];
    return r;
  }

  // Exact division by h^k; every coefficient below h^k must vanish.
  HPoly divided_by_h(unsigned k) const {
    if (is_zero()) return {};
    if (c_.size() <= k) throw ValidationError("polynomial not divisible by requested h power");
    for (unsigned j = 0; j < k; ++j)
      if (!c_[j].is_zero()) throw ValidationError("polynomial not divisible by requested h power");
    HPoly r;
    r.c_.assign(c_.begin() + k, c_.end());
    return r;
  }

  Scalar eval(const Scalar& h) const {
    Scalar acc;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * h + c_[k];
    return acc;
  }

  const std::vector<Scalar>& coeffs() const { return c_; }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + c_[k].str() + ")";
      if (k == 1) s += "*h";
      else if (k > 1) s += "*h^" + std::to_string(k);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<Scalar> c_;
};

// Three-way compare on coefficient sequences (degree first, then ascending
// coefficients); only used to make term printing deterministic.
inline int hpoly_cmp(const HPoly& a, const HPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (int k = 0; k <= a.degree(); ++k) {
    int c = scalar_cmp(a.coeff(static_cast<std::size_t>(k)), b.coeff(static_cast<std::size_t>(k)));
    if (c) return c;
  }
  return 0;
}

}  // namespace fdq
