#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fdq/star.hpp"

namespace fdq::env {

using core::Symbol;
using star::DiffContext;
using star::DiffOperator;

// First-order symbol v + f: a vector field v (homogeneous of degree 1 in pi,
// arbitrary phi dependence) plus a multiplication part f (pi-free).
struct Generator {
  Symbol f, v;

  friend bool operator==(const Generator& a, const Generator& b) {
    return a.f == b.f && a.v == b.v;
  }
  friend bool operator!=(const Generator& a, const Generator& b) { return !(a == b); }
};

Generator make_generator(Symbol f, Symbol v);

// Formal linear combination of finite generator sequences; the free algebra
// on generators before the relations are imposed. The empty sequence is the
// unit.
class DiffWord {
 public:
  using Term = std::pair<std::vector<Generator>, HPoly>;

  explicit DiffWord(unsigned modes = 1) : modes_(modes) {
    if (modes == 0) throw ValidationError("mode space must have at least one mode");
  }

  static DiffWord unit(unsigned modes) {
    DiffWord w(modes);
    w.add({}, HPoly(Scalar::one()));
    return w;
  }
  static DiffWord atom(Generator g) {
    DiffWord w(g.f.modes());
    w.add({std::move(g)}, HPoly(Scalar::one()));
    return w;
  }

  unsigned modes() const { return modes_; }
  bool is_zero() const { return t_.empty(); }
  const std::vector<Term>& terms() const { return t_; }

  void add(std::vector<Generator> seq, HPoly c);

  DiffWord& operator+=(const DiffWord& o);
  DiffWord& operator-=(const DiffWord& o);
  friend DiffWord operator+(DiffWord a, const DiffWord& b) { return a += b; }
  friend DiffWord operator-(DiffWord a, const DiffWord& b) { return a -= b; }
  DiffWord scaled(const HPoly& c) const;

 private:
  unsigned modes_;
  std::vector<Term> t_;
};

DiffWord word_product(const DiffWord& a, const DiffWord& b);

// Antilinear involution: conjugate coefficients, reverse each sequence,
// f -> conj(f), v -> sign * conj(v) with the context's involution sign.
DiffWord involution(const DiffWord& w, const DiffContext& ctx);

// The normal form of a word is a plain Symbol: phi-monomials to the left of
// pi-monomials under the normal quantization.
using DiffElement = Symbol;

// Redex-selection strategies; all must agree (confluence).
enum class Strategy { Leftmost, Rightmost, Seeded };

DiffElement normal_form(const DiffWord& w, const DiffContext& ctx,
                        Strategy strategy = Strategy::Leftmost, std::uint64_t seed = 0);

// Faithful representation rho: generator v + f acts as
// f + lambda * sum_i v_i d/dphi_i + (lambda/2) * sum_i dv_i/dphi_i.
DiffOperator represent(const DiffWord& w, const DiffContext& ctx);

}  // namespace fdq::env
