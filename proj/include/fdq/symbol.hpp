#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "fdq/hpoly.hpp"
#include "fdq/multi_index.hpp"

namespace fdq::core {

enum class Var { Phi, Pi };

// One monomial in the phase-space variables: exponents of the phi modes and
// of the pi modes.
struct TermKey {
  MultiIndex phi, pi;

  unsigned total() const { return phi.total() + pi.total(); }

  friend bool operator==(const TermKey& a, const TermKey& b) {
    return a.phi == b.phi && a.pi == b.pi;
  }
};

// Canonical term order: higher total degree first, then lexicographically
// larger phi exponents, then larger pi exponents. Map iteration in this
// order is the interchange order used by printing and JSON.
struct TermLess {
  bool operator()(const TermKey& a, const TermKey& b) const {
    unsigned ta = a.total(), tb = b.total();
    if (ta != tb) return ta > tb;
    int c = lex_cmp(a.phi, b.phi);
    if (c) return c > 0;
    return lex_cmp(a.pi, b.pi) > 0;
  }
};

// Exact polynomial in phi_1..phi_N, pi_1..pi_N with HPoly coefficients.
// Terms with zero coefficient are never stored, so map equality is symbol
// equality. Immutable in spirit: every operation returns a fresh value.
class Symbol {
 public:
  using TermMap = std::map<TermKey, HPoly, TermLess>;

  explicit Symbol(unsigned modes = 1) : modes_(modes) {
    if (modes == 0) throw ValidationError("mode space must have at least one mode");
  }

  static Symbol zero(unsigned modes) { return Symbol(modes); }
  static Symbol constant(unsigned modes, HPoly c) {
    Symbol s(modes);
    s.add_term({}, std::move(c));
    return s;
  }
  static Symbol phi(unsigned modes, unsigned mode, unsigned exp = 1) {
    Symbol s(modes);
    s.add_term({MultiIndex::unit(mode, exp), {}}, HPoly(Scalar::one()));
    return s;
  }
  static Symbol pi(unsigned modes, unsigned mode, unsigned exp = 1) {
    Symbol s(modes);
    s.add_term({{}, MultiIndex::unit(mode, exp)}, HPoly(Scalar::one()));
    return s;
  }
  static Symbol monomial(unsigned modes, MultiIndex phi, MultiIndex pi, HPoly coeff) {
    Symbol s(modes);
    s.add_term({std::move(phi), std::move(pi)}, std::move(coeff));
    return s;
  }

  unsigned modes() const { return modes_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t term_count() const { return t_.size(); }
  const TermMap& terms() const { return t_; }

  // Coefficient lookup; zero HPoly when the term is absent.
  const HPoly& coeff(const TermKey& k) const {
    static const HPoly kZero;
    auto it = t_.find(k);
    return it == t_.end() ? kZero : it->second;
  }

  // Accumulate a coefficient onto a term, dropping it if the sum vanishes.
  void add_term(TermKey k, HPoly c) {
    if (c.is_zero()) return;
    check_key(k);
    auto it = t_.find(k);
    if (it == t_.end()) {
      t_.emplace(std::move(k), std::move(c));
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  Symbol operator-() const {
    Symbol r(modes_);
    for (const auto& [k, c] : t_) r.t_.emplace(k, -c);
    return r;
  }

  Symbol& operator+=(const Symbol& o);
  Symbol& operator-=(const Symbol& o);
  friend Symbol operator+(Symbol a, const Symbol& b) { return a += b; }
  friend Symbol operator-(Symbol a, const Symbol& b) { return a -= b; }
  friend Symbol operator*(const Symbol& a, const Symbol& b);
  Symbol& operator*=(const Symbol& o) { return *this = *this * o; }

  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.modes_ == b.modes_ && a.t_ == b.t_;
  }
  friend bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }

  Symbol scaled(const HPoly& c) const {
    Symbol r(modes_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : t_) r.t_.emplace(k, v * c);
    return r;
  }

  Symbol pow(unsigned n) const;

  bool is_pi_free() const {
    for (const auto& [k, c] : t_)
      if (!k.pi.empty()) return false;
    return true;
  }
  bool is_phi_free() const {
    for (const auto& [k, c] : t_)
      if (!k.phi.empty()) return false;
    return true;
  }

  unsigned phi_degree() const {
    unsigned d = 0;
    for (const auto& [k, c] : t_) d = std::max(d, k.phi.total());
    return d;
  }
  unsigned pi_degree() const {
    unsigned d = 0;
    for (const auto& [k, c] : t_) d = std::max(d, k.pi.total());
    return d;
  }
  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [k, c] : t_) d = std::max(d, k.total());
    return d;
  }

  // Lowest power of h with a nonzero coefficient anywhere; -1 for zero.
  int min_h_degree() const;
  int max_h_degree() const;

  // Coefficient of h^p across all terms, as an h-free Symbol.
  Symbol h_component(unsigned p) const;

  std::complex<double> eval_double(const std::vector<double>& phi, const std::vector<double>& pi,
                                   double h) const;

 private:
  void check_key(const TermKey& k) const {
    if (k.phi.max_mode() > modes_ || k.pi.max_mode() > modes_)
      throw ValidationError("mode index exceeds mode space");
    for (const auto& [m, x] : k.phi.entries())
      if (m == 0) throw ValidationError("mode indices are 1-based");
    for (const auto& [m, x] : k.pi.entries())
      if (m == 0) throw ValidationError("mode indices are 1-based");
  }

  unsigned modes_;
  TermMap t_;
};

void require_same_space(const Symbol& a, const Symbol& b);

Symbol functional_derivative(const Symbol& a, Var which, unsigned mode);
// Iterated derivative with multiplicities given by a multi-index.
Symbol functional_derivative(const Symbol& a, Var which, const MultiIndex& alpha);
Symbol conjugate(const Symbol& a);
Symbol poisson_bracket(const Symbol& a, const Symbol& b);
std::vector<std::tuple<unsigned, unsigned, Symbol>> bidegree_decompose(const Symbol& a);

// The (k,l) kernel of a symbol on sorted mode tuples. A stored entry is the
// monomial coefficient times k!*l!: the symmetrization over all orderings of
// the tuple is collected onto the sorted representative, so reconstruction
// divides by k!*l! and round-trips exactly.
struct KernelTensor {
  unsigned k = 0, l = 0;
  unsigned modes = 0;
  std::map<std::pair<std::vector<unsigned>, std::vector<unsigned>>, HPoly> entries;

  friend bool operator==(const KernelTensor& a, const KernelTensor& b) {
    return a.k == b.k && a.l == b.l && a.modes == b.modes && a.entries == b.entries;
  }
};

KernelTensor kernel_extract(const Symbol& a, unsigned k, unsigned l);
Symbol kernel_reconstruct(const KernelTensor& t);

Rational factorial(unsigned n);
Rational binomial(unsigned n, unsigned k);
Rational multi_factorial(const MultiIndex& a);
// Product of componentwise binomials; requires gamma <= alpha.
Rational multi_binomial(const MultiIndex& alpha, const MultiIndex& gamma);

}  // namespace fdq::core
