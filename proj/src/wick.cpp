#include "fdq/wick.hpp"

namespace fdq::star {

RootCoeff RootCoeff::mul(const RootCoeff& a, const RootCoeff& b,
                         const std::vector<Rational>& omega) {
  RootCoeff r;
  for (const auto& [p, cp] : a.m) {
    for (const auto& [q, cq] : b.m) {
      std::uint32_t common = p & q;
      Rational factor(1);
      for (unsigned i = 0; common; ++i, common >>= 1)
        if (common & 1u) factor *= Rational(2) * omega[i];
      r.add(p ^ q, cp * cq * HPoly(Scalar(factor)));
    }
  }
  return r;
}

WickSymbol::WickSymbol(unsigned modes, std::vector<Rational> omega)
    : modes_(modes), omega_(std::move(omega)) {
  if (modes == 0) throw ValidationError("mode space must have at least one mode");
  if (modes > 32) throw ValidationError("wick transform supports at most 32 modes");
  if (omega_.size() != modes) throw ValidationError("frequency vector size must equal mode count");
  for (const auto& w : omega_)
    if (sgn(w) <= 0) throw ValidationError("frequencies must be positive");
}

void WickSymbol::add_term(TermKey k, RootCoeff c) {
  if (c.is_zero()) return;
  if (k.phi.max_mode() > modes_ || k.pi.max_mode() > modes_)
    throw ValidationError("mode index exceeds mode space");
  auto it = t_.find(k);
  if (it == t_.end()) {
    t_.emplace(std::move(k), std::move(c));
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

WickSymbol WickSymbol::operator-() const {
  WickSymbol r(modes_, omega_);
  for (const auto& [k, c] : t_) r.t_.emplace(k, -c);
  return r;
}

void require_same_frequencies(const WickSymbol& a, const WickSymbol& b) {
  if (a.modes() != b.modes() || a.omega() != b.omega())
    throw ValidationError("wick symbols live on different frequency spaces");
}

WickSymbol& WickSymbol::operator+=(const WickSymbol& o) {
  require_same_frequencies(*this, o);
  if (&o == this) return *this = scaled(RootCoeff(HPoly(Scalar(2))));
  for (const auto& [k, c] : o.t_) add_term(k, c);
  return *this;
}

WickSymbol& WickSymbol::operator-=(const WickSymbol& o) {
  require_same_frequencies(*this, o);
  if (&o == this) return *this = WickSymbol(modes_, omega_);
  for (const auto& [k, c] : o.t_) add_term(k, -c);
  return *this;
}

WickSymbol operator*(const WickSymbol& a, const WickSymbol& b) {
  require_same_frequencies(a, b);
  WickSymbol r(a.modes_, a.omega_);
  for (const auto& [ka, ca] : a.t_)
    for (const auto& [kb, cb] : b.t_)
      r.add_term({ka.phi.plus(kb.phi), ka.pi.plus(kb.pi)}, RootCoeff::mul(ca, cb, a.omega_));
  return r;
}

WickSymbol WickSymbol::scaled(const RootCoeff& c) const {
  WickSymbol r(modes_, omega_);
  if (c.is_zero()) return r;
  for (const auto& [k, v] : t_) r.add_term(k, RootCoeff::mul(v, c, omega_));
  return r;
}

WickSymbol WickSymbol::pow(unsigned n) const {
  WickSymbol acc(modes_, omega_);
  acc.add_term({}, RootCoeff(HPoly(Scalar::one())));
  WickSymbol base = *this;
  for (; n; n >>= 1) {
    if (n & 1) acc = acc * base;
    if (n > 1) base = base * base;
  }
  return acc;
}

WickSymbol WickSymbol::derivative(WVar which, unsigned mode) const {
  if (mode == 0 || mode > modes_) throw ValidationError("derivative mode out of range");
  WickSymbol r(modes_, omega_);
  for (const auto& [k, c] : t_) {
    const MultiIndex& mi = which == WVar::A ? k.phi : k.pi;
    unsigned e = mi.get(mode);
    if (e == 0) continue;
    TermKey nk = k;
    (which == WVar::A ? nk.phi : nk.pi) = mi.with(mode, e - 1);
    RootCoeff scale{HPoly(Scalar(static_cast<long long>(e)))};
    r.add_term(std::move(nk), RootCoeff::mul(c, scale, omega_));
  }
  return r;
}

Symbol WickSymbol::to_symbol() const {
  Symbol out(modes_);
  for (const auto& [k, c] : t_) {
    for (const auto& [mask, hp] : c.m) {
      if (mask != 0)
        throw ValidationError("wick expression does not reduce to a radical-free symbol");
      out.add_term(k, hp);
    }
  }
  return out;
}

namespace {

// phi_i = s_i/(2 omega_i) * (a_i + abar_i); pi_i = (i/2) s_i (abar_i - a_i).
WickSymbol phi_sub(unsigned modes, const std::vector<Rational>& omega, unsigned i) {
  WickSymbol w(modes, omega);
  RootCoeff c = RootCoeff::root(i, HPoly(Scalar(Rational(1) / (Rational(2) * omega[i - 1]))));
  w.add_term({MultiIndex::unit(i), {}}, c);
  w.add_term({{}, MultiIndex::unit(i)}, c);
  return w;
}

WickSymbol pi_sub(unsigned modes, const std::vector<Rational>& omega, unsigned i) {
  WickSymbol w(modes, omega);
  RootCoeff c = RootCoeff::root(i, HPoly(Scalar(Rational(0), make_rational(1, 2))));
  w.add_term({{}, MultiIndex::unit(i)}, c);
  w.add_term({MultiIndex::unit(i), {}}, -c);
  return w;
}

// a_i = (omega_i phi_i + i pi_i) s_i/(2 omega_i), abar_i the conjugate;
// here the x-family of the result carries phi and the y-family carries pi.
WickSymbol a_sub(unsigned modes, const std::vector<Rational>& omega, unsigned i, bool bar) {
  WickSymbol w(modes, omega);
  Rational inv = Rational(1) / (Rational(2) * omega[i - 1]);
  w.add_term({MultiIndex::unit(i), {}}, RootCoeff::root(i, HPoly(Scalar(omega[i - 1] * inv))));
  Scalar ic(Rational(0), bar ? -inv : inv);
  w.add_term({{}, MultiIndex::unit(i)}, RootCoeff::root(i, HPoly(ic)));
  return w;
}

}  // namespace

WickSymbol wick_transform(const Symbol& a, std::vector<Rational> omega) {
  WickSymbol out(a.modes(), std::move(omega));
  const auto& om = out.omega();
  for (const auto& [k, c] : a.terms()) {
    WickSymbol term(a.modes(), om);
    term.add_term({}, RootCoeff(c));
    for (const auto& [m, x] : k.phi.entries()) term = term * phi_sub(a.modes(), om, m).pow(x);
    for (const auto& [m, x] : k.pi.entries()) term = term * pi_sub(a.modes(), om, m).pow(x);
    out += term;
  }
  return out;
}

Symbol wick_inverse(const WickSymbol& w) {
  WickSymbol out(w.modes(), w.omega());
  const auto& om = w.omega();
  for (const auto& [k, c] : w.terms()) {
    WickSymbol term(w.modes(), om);
    term.add_term({}, c);
    for (const auto& [m, x] : k.phi.entries()) term = term * a_sub(w.modes(), om, m, false).pow(x);
    for (const auto& [m, x] : k.pi.entries()) term = term * a_sub(w.modes(), om, m, true).pow(x);
    out += term;
  }
  return out.to_symbol();
}

WickSymbol wick_bracket(const WickSymbol& f, const WickSymbol& g) {
  require_same_frequencies(f, g);
  WickSymbol r(f.modes(), f.omega());
  RootCoeff iu{HPoly(Scalar::i())};
  for (unsigned m = 1; m <= f.modes(); ++m) {
    WickSymbol t1 = f.derivative(WickSymbol::WVar::A, m) * g.derivative(WickSymbol::WVar::ABar, m);
    WickSymbol t2 = f.derivative(WickSymbol::WVar::ABar, m) * g.derivative(WickSymbol::WVar::A, m);
    r += (t1 - t2).scaled(iu);
  }
  return r;
}

}  // namespace fdq::star
