#include "fdq/symbol.hpp"

#include <algorithm>

namespace fdq::core {

void require_same_space(const Symbol& a, const Symbol& b) {
  if (a.modes() != b.modes()) throw ValidationError("symbols live on different mode spaces");
}

Symbol& Symbol::operator+=(const Symbol& o) {
  require_same_space(*this, o);
  if (&o == this) return *this = scaled(HPoly(Scalar(2)));
  for (const auto& [k, c] : o.t_) add_term(k, c);
  return *this;
}

Symbol& Symbol::operator-=(const Symbol& o) {
  require_same_space(*this, o);
  if (&o == this) return *this = Symbol(modes_);
  for (const auto& [k, c] : o.t_) add_term(k, -c);
  return *this;
}

Symbol operator*(const Symbol& a, const Symbol& b) {
  require_same_space(a, b);
  Symbol r(a.modes());
  for (const auto& [ka, ca] : a.t_)
    for (const auto& [kb, cb] : b.t_)
      r.add_term({ka.phi.plus(kb.phi), ka.pi.plus(kb.pi)}, ca * cb);
  return r;
}

Symbol Symbol::pow(unsigned n) const {
  Symbol acc = constant(modes_, HPoly(Scalar::one()));
  Symbol base = *this;
  for (; n; n >>= 1) {
    if (n & 1) acc *= base;
    if (n > 1) base *= base;
  }
  return acc;
}

int Symbol::min_h_degree() const {
  int m = -1;
  for (const auto& [k, c] : t_) {
    int low = 0;
    while (c.coeff(static_cast<std::size_t>(low)).is_zero()) ++low;
    if (m < 0 || low < m) m = low;
  }
  return m;
}

int Symbol::max_h_degree() const {
  int m = -1;
  for (const auto& [k, c] : t_) m = std::max(m, c.degree());
  return m;
}

Symbol Symbol::h_component(unsigned p) const {
  Symbol r(modes_);
  for (const auto& [k, c] : t_) r.add_term(k, HPoly(c.coeff(p)));
  return r;
}

std::complex<double> Symbol::eval_double(const std::vector<double>& phi,
                                         const std::vector<double>& pi, double h) const {
  if (phi.size() < modes_ || pi.size() < modes_)
    throw ValidationError("phase point has fewer components than the mode space");
  std::complex<double> acc = 0.0;
  for (const auto& [k, c] : t_) {
    double mono = 1.0;
    for (const auto& [m, x] : k.phi.entries())
      for (unsigned j = 0; j < x; ++j) mono *= phi[m - 1];
    for (const auto& [m, x] : k.pi.entries())
      for (unsigned j = 0; j < x; ++j) mono *= pi[m - 1];
    std::complex<double> hval = 0.0;
    for (int p = c.degree(); p >= 0; --p)
      hval = hval * h + c.coeff(static_cast<std::size_t>(p)).to_double();
    acc += mono * hval;
  }
  return acc;
}

Symbol functional_derivative(const Symbol& a, Var which, unsigned mode) {
  if (mode == 0 || mode > a.modes()) throw ValidationError("derivative mode out of range");
  Symbol r(a.modes());
  for (const auto& [k, c] : a.terms()) {
    const MultiIndex& mi = which == Var::Phi ? k.phi : k.pi;
    unsigned e = mi.get(mode);
    if (e == 0) continue;
    TermKey nk = k;
    (which == Var::Phi ? nk.phi : nk.pi) = mi.with(mode, e - 1);
    r.add_term(std::move(nk), c * HPoly(Scalar(static_cast<long long>(e))));
  }
  return r;
}

Symbol functional_derivative(const Symbol& a, Var which, const MultiIndex& alpha) {
  Symbol r = a;
  for (const auto& [m, x] : alpha.entries())
    for (unsigned j = 0; j < x && !r.is_zero(); ++j) r = functional_derivative(r, which, m);
  return r;
}

Symbol conjugate(const Symbol& a) {
  Symbol r(a.modes());
  for (const auto& [k, c] : a.terms()) r.add_term(k, c.conj());
  return r;
}

Symbol poisson_bracket(const Symbol& a, const Symbol& b) {
  require_same_space(a, b);
  Symbol r(a.modes());
  for (unsigned m = 1; m <= a.modes(); ++m) {
    r += functional_derivative(a, Var::Pi, m) * functional_derivative(b, Var::Phi, m);
    r -= functional_derivative(a, Var::Phi, m) * functional_derivative(b, Var::Pi, m);
  }
  return r;
}

std::vector<std::tuple<unsigned, unsigned, Symbol>> bidegree_decompose(const Symbol& a) {
  std::map<std::pair<unsigned, unsigned>, Symbol> parts;
  for (const auto& [k, c] : a.terms()) {
    auto key = std::make_pair(k.phi.total(), k.pi.total());
    auto it = parts.find(key);
    if (it == parts.end()) it = parts.emplace(key, Symbol::zero(a.modes())).first;
    it->second.add_term(k, c);
  }
  std::vector<std::tuple<unsigned, unsigned, Symbol>> out;
  out.reserve(parts.size());
  for (auto& [kl, s] : parts) out.emplace_back(kl.first, kl.second, std::move(s));
  return out;
}

Rational factorial(unsigned n) {
  Rational r(1);
  for (unsigned j = 2; j <= n; ++j) r *= Rational(static_cast<long>(j));
  return r;
}

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return Rational(0);
  return factorial(n) / (factorial(k) * factorial(n - k));
}

Rational multi_factorial(const MultiIndex& a) {
  Rational r(1);
  for (const auto& [m, x] : a.entries()) r *= factorial(x);
  return r;
}

Rational multi_binomial(const MultiIndex& alpha, const MultiIndex& gamma) {
  Rational r(1);
  for (const auto& [m, x] : gamma.entries()) r *= binomial(alpha.get(m), x);
  return r;
}

namespace {

std::vector<unsigned> sorted_tuple(const MultiIndex& mi) {
  std::vector<unsigned> t;
  for (const auto& [m, x] : mi.entries())
    for (unsigned j = 0; j < x; ++j) t.push_back(m);
  return t;
}

MultiIndex tuple_index(const std::vector<unsigned>& t) {
  MultiIndex mi;
  for (unsigned m : t) mi = mi.plus(MultiIndex::unit(m));
  return mi;
}

}  // namespace

KernelTensor kernel_extract(const Symbol& a, unsigned k, unsigned l) {
  KernelTensor t;
  t.k = k;
  t.l = l;
  t.modes = a.modes();
  HPoly norm{Scalar(factorial(k) * factorial(l))};
  for (const auto& [key, c] : a.terms()) {
    if (key.phi.total() != k || key.pi.total() != l) continue;
    t.entries.emplace(std::make_pair(sorted_tuple(key.phi), sorted_tuple(key.pi)), c * norm);
  }
  return t;
}

Symbol kernel_reconstruct(const KernelTensor& t) {
  Symbol r(t.modes);
  Scalar inv = Scalar(Rational(1) / (factorial(t.k) * factorial(t.l)));
  for (const auto& [tuples, c] : t.entries)
    r.add_term({tuple_index(tuples.first), tuple_index(tuples.second)}, c * HPoly(inv));
  return r;
}

}  // namespace fdq::core
