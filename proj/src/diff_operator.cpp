#include "fdq/diff_operator.hpp"

namespace fdq::star {

using core::functional_derivative;

Symbol DiffOperator::apply(const Symbol& psi) const {
  if (psi.modes() != modes_) throw ValidationError("wavefunction lives on a different mode space");
  if (!psi.is_pi_free()) throw ValidationError("wavefunctions must be pi-free");
  Symbol out(modes_);
  for (const auto& [alpha, c] : t_) {
    Symbol d = functional_derivative(psi, Var::Phi, alpha);
    if (!d.is_zero()) out += c * d;
  }
  return out;
}

DiffOperator compose(const DiffOperator& a, const DiffOperator& b) {
  if (a.modes() != b.modes()) throw ValidationError("operators live on different mode spaces");
  DiffOperator out(a.modes());
  for (const auto& [alpha, c] : a.terms()) {
    for (const auto& [beta, d] : b.terms()) {
      // d^alpha o (d(phi) ...) via Leibniz: sum over gamma <= alpha of
      // binom(alpha,gamma) (d^gamma d) d^(alpha-gamma).
      for_each_sub_index(alpha, [&](const MultiIndex& gamma) {
        Symbol dg = functional_derivative(d, Var::Phi, gamma);
        if (dg.is_zero()) return;
        HPoly w{Scalar(core::multi_binomial(alpha, gamma))};
        out.add_term(alpha.minus(gamma).plus(beta), (c * dg).scaled(w));
      });
    }
  }
  return out;
}

DiffOperator adjoint(const DiffOperator& op) {
  DiffOperator out(op.modes());
  for (const auto& [alpha, c] : op.terms()) {
    DiffOperator term = compose(DiffOperator::derivative(op.modes(), alpha),
                                DiffOperator::multiplication(core::conjugate(c)));
    if (alpha.total() % 2) out -= term;
    else out += term;
  }
  return out;
}

}  // namespace fdq::star
