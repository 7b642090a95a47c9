#pragma once

#include <map>

#include "fdq/symbol.hpp"

namespace fdq::star {

using core::Symbol;
using core::Var;

// Differential operator on polynomial wavefunctions in phi: a sum of terms
// c_alpha(phi) * d^alpha/dphi^alpha with pi-free Symbol coefficients. The
// derivative always stands to the right of its coefficient.
class DiffOperator {
 public:
  using TermMap = std::map<MultiIndex, Symbol, MultiIndexLess>;

  explicit DiffOperator(unsigned modes = 1) : modes_(modes) {
    if (modes == 0) throw ValidationError("mode space must have at least one mode");
  }

  static DiffOperator identity(unsigned modes) {
    DiffOperator op(modes);
    op.add_term({}, Symbol::constant(modes, HPoly(Scalar::one())));
    return op;
  }
  static DiffOperator multiplication(const Symbol& f) {
    DiffOperator op(f.modes());
    op.add_term({}, f);
    return op;
  }
  static DiffOperator derivative(unsigned modes, MultiIndex alpha,
                                 HPoly coeff = HPoly(Scalar::one())) {
    DiffOperator op(modes);
    op.add_term(std::move(alpha), Symbol::constant(modes, std::move(coeff)));
    return op;
  }

  unsigned modes() const { return modes_; }
  bool is_zero() const { return t_.empty(); }
  const TermMap& terms() const { return t_; }

  void add_term(MultiIndex alpha, Symbol coeff) {
    if (coeff.modes() != modes_) throw ValidationError("coefficient lives on a different mode space");
    if (!coeff.is_pi_free()) throw ValidationError("operator coefficients must be pi-free");
    if (coeff.is_zero()) return;
    if (alpha.max_mode() > modes_) throw ValidationError("derivative mode exceeds mode space");
    auto it = t_.find(alpha);
    if (it == t_.end()) {
      t_.emplace(std::move(alpha), std::move(coeff));
    } else {
      it->second += coeff;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  DiffOperator& operator+=(const DiffOperator& o) {
    if (o.modes_ != modes_) throw ValidationError("operators live on different mode spaces");
    if (&o == this) return *this = scaled(HPoly(Scalar(2)));
    for (const auto& [a, c] : o.t_) add_term(a, c);
    return *this;
  }
  DiffOperator& operator-=(const DiffOperator& o) {
    if (o.modes_ != modes_) throw ValidationError("operators live on different mode spaces");
    if (&o == this) return *this = DiffOperator(modes_);
    for (const auto& [a, c] : o.t_) add_term(a, -c);
    return *this;
  }
  friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
  friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }

  DiffOperator scaled(const HPoly& c) const {
    DiffOperator r(modes_);
    for (const auto& [a, s] : t_) r.add_term(a, s.scaled(c));
    return r;
  }

  friend bool operator==(const DiffOperator& a, const DiffOperator& b) {
    return a.modes_ == b.modes_ && a.t_ == b.t_;
  }
  friend bool operator!=(const DiffOperator& a, const DiffOperator& b) { return !(a == b); }

  // Exact action on a pi-free polynomial wavefunction.
  Symbol apply(const Symbol& psi) const;

 private:
  unsigned modes_;
  TermMap t_;
};

DiffOperator compose(const DiffOperator& a, const DiffOperator& b);

// Formal adjoint under the integration-by-parts rules: each derivative picks
// up a minus sign, multiplication coefficients are conjugated, factor order
// reverses. The result is normal-ordered back into coefficient-then-derivative
// form.
DiffOperator adjoint(const DiffOperator& op);

}  // namespace fdq::star
