#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fdq/symbol.hpp"

namespace fdq::star {

using core::Symbol;
using core::TermKey;
using core::TermLess;

// Coefficient ring for Wick variables: HPoly coefficients times products of
// per-mode adjoined radicals s_i with the reduction s_i^2 = 2*omega_i. A
// product of radicals is a bitmask over modes, so the mode count is capped
// at 32.
struct RootCoeff {
  std::map<std::uint32_t, HPoly> m;

  RootCoeff() = default;
  explicit RootCoeff(HPoly c) {
    if (!c.is_zero()) m.emplace(0u, std::move(c));
  }
  static RootCoeff root(unsigned mode, HPoly c = HPoly(Scalar::one())) {
    RootCoeff r;
    if (!c.is_zero()) r.m.emplace(1u << (mode - 1), std::move(c));
    return r;
  }

  bool is_zero() const { return m.empty(); }

  void add(std::uint32_t mask, const HPoly& c) {
    if (c.is_zero()) return;
    auto it = m.find(mask);
    if (it == m.end()) {
      m.emplace(mask, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) m.erase(it);
    }
  }

  RootCoeff operator-() const {
    RootCoeff r;
    for (const auto& [k, c] : m) r.m.emplace(k, -c);
    return r;
  }
  RootCoeff& operator+=(const RootCoeff& o) {
    for (const auto& [k, c] : o.m) add(k, c);
    return *this;
  }
  RootCoeff& operator-=(const RootCoeff& o) {
    for (const auto& [k, c] : o.m) add(k, -c);
    return *this;
  }
  friend RootCoeff operator+(RootCoeff a, const RootCoeff& b) { return a += b; }
  friend RootCoeff operator-(RootCoeff a, const RootCoeff& b) { return a -= b; }
  friend bool operator==(const RootCoeff& a, const RootCoeff& b) { return a.m == b.m; }
  friend bool operator!=(const RootCoeff& a, const RootCoeff& b) { return !(a == b); }

  // Radicals are real and positive, so conjugation only touches coefficients.
  RootCoeff conj() const {
    RootCoeff r;
    for (const auto& [k, c] : m) r.m.emplace(k, c.conj());
    return r;
  }

  // Multiplication reduces shared radicals: s_i * s_i = 2*omega_i.
  static RootCoeff mul(const RootCoeff& a, const RootCoeff& b, const std::vector<Rational>& omega);
};

// Polynomial in a pair of per-mode variable families with RootCoeff
// coefficients over a fixed frequency vector. Interpreted as Wick variables
// (x = a_i, y = abar_i) by the transform, and as (x = phi_i, y = pi_i)
// internally by the inverse substitution.
class WickSymbol {
 public:
  enum class WVar { A, ABar };

  WickSymbol(unsigned modes, std::vector<Rational> omega);

  unsigned modes() const { return modes_; }
  const std::vector<Rational>& omega() const { return omega_; }
  bool is_zero() const { return t_.empty(); }
  const std::map<TermKey, RootCoeff, TermLess>& terms() const { return t_; }

  void add_term(TermKey k, RootCoeff c);

  WickSymbol operator-() const;
  WickSymbol& operator+=(const WickSymbol& o);
  WickSymbol& operator-=(const WickSymbol& o);
  friend WickSymbol operator+(WickSymbol a, const WickSymbol& b) { return a += b; }
  friend WickSymbol operator-(WickSymbol a, const WickSymbol& b) { return a -= b; }
  friend WickSymbol operator*(const WickSymbol& a, const WickSymbol& b);
  WickSymbol scaled(const RootCoeff& c) const;
  WickSymbol pow(unsigned n) const;

  friend bool operator==(const WickSymbol& a, const WickSymbol& b) {
    return a.modes_ == b.modes_ && a.omega_ == b.omega_ && a.t_ == b.t_;
  }
  friend bool operator!=(const WickSymbol& a, const WickSymbol& b) { return !(a == b); }

  WickSymbol derivative(WVar which, unsigned mode) const;

  // Succeeds only when every coefficient is radical-free.
  Symbol to_symbol() const;

 private:
  unsigned modes_;
  std::vector<Rational> omega_;
  std::map<TermKey, RootCoeff, TermLess> t_;
};

void require_same_frequencies(const WickSymbol& a, const WickSymbol& b);

// a_i = (omega_i phi_i + i pi_i)/s_i, abar_i its conjugate, s_i = sqrt(2 omega_i).
// Transported bracket constant: {a_i, abar_j} = i * delta_ij for every omega.
WickSymbol wick_transform(const Symbol& a, std::vector<Rational> omega);
Symbol wick_inverse(const WickSymbol& w);

// {F,G} transported to Wick variables:
// sum_i i * (dF/da_i dG/dabar_i - dF/dabar_i dG/da_i).
WickSymbol wick_bracket(const WickSymbol& f, const WickSymbol& g);

}  // namespace fdq::star
