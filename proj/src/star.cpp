#include "fdq/star.hpp"

#include <algorithm>
#include <vector>

namespace fdq::star {

using core::functional_derivative;
using core::require_same_space;
using core::Var;

void require_context(const Symbol& a, const DiffContext& ctx) {
  if (a.modes() != ctx.modes) throw ValidationError("symbol does not match the context mode space");
}

Symbol normal_star(const Symbol& a, const Symbol& b, const DiffContext& ctx) {
  require_same_space(a, b);
  require_context(a, ctx);
  Symbol out(a.modes());
  unsigned maxn = std::min(a.pi_degree(), b.phi_degree());
  for (unsigned n = 0; n <= maxn; ++n) {
    for_each_multi_index(a.modes(), n, [&](const MultiIndex& alpha) {
      Symbol da = functional_derivative(a, Var::Pi, alpha);
      if (da.is_zero()) return;
      Symbol db = functional_derivative(b, Var::Phi, alpha);
      if (db.is_zero()) return;
      HPoly w = ctx.lambda_pow(n) * HPoly(Scalar(Rational(1) / core::multi_factorial(alpha)));
      out += (da * db).scaled(w);
    });
  }
  return out;
}

Symbol weyl_star(const Symbol& a, const Symbol& b, const DiffContext& ctx) {
  require_same_space(a, b);
  require_context(a, ctx);
  Symbol out(a.modes());
  Scalar half = ctx.lambda_coeff * Scalar(make_rational(1, 2));
  unsigned maxr = std::min(a.pi_degree(), b.phi_degree());
  unsigned maxs = std::min(a.phi_degree(), b.pi_degree());
  for (unsigned nr = 0; nr <= maxr; ++nr) {
    for (unsigned ns = 0; ns <= maxs; ++ns) {
      for_each_multi_index(a.modes(), nr, [&](const MultiIndex& r) {
        Symbol ar = functional_derivative(a, Var::Pi, r);
        if (ar.is_zero()) return;
        Symbol br = functional_derivative(b, Var::Phi, r);
        if (br.is_zero()) return;
        for_each_multi_index(a.modes(), ns, [&](const MultiIndex& s) {
          Symbol as = functional_derivative(ar, Var::Phi, s);
          if (as.is_zero()) return;
          Symbol bs = functional_derivative(br, Var::Pi, s);
          if (bs.is_zero()) return;
          Rational inv = Rational(1) / (core::multi_factorial(r) * core::multi_factorial(s));
          Scalar coeff = half.pow(nr + ns) * Scalar(ns % 2 ? -inv : inv);
          out += (as * bs).scaled(HPoly::h(nr + ns, coeff));
        });
      });
    }
  }
  return out;
}

Symbol ordering_transform(const Symbol& a, const DiffContext& ctx, Direction dir) {
  require_context(a, ctx);
  Scalar step = ctx.lambda_coeff * Scalar(make_rational(dir == Direction::WeylToNormal ? 1 : -1, 2));
  Symbol acc = a, cur = a;
  for (unsigned n = 1; !cur.is_zero(); ++n) {
    Symbol d(a.modes());
    for (unsigned m = 1; m <= a.modes(); ++m)
      d += functional_derivative(functional_derivative(cur, Var::Phi, m), Var::Pi, m);
    if (d.is_zero()) break;
    cur = d.scaled(HPoly::h(1, step * Scalar(make_rational(1, static_cast<long long>(n)))));
    acc += cur;
  }
  return acc;
}

DiffOperator quantize_normal(const Symbol& a, const DiffContext& ctx) {
  require_context(a, ctx);
  DiffOperator op(a.modes());
  for (const auto& [k, c] : a.terms())
    op.add_term(k.pi, Symbol::monomial(a.modes(), k.phi, {}, c * ctx.lambda_pow(k.pi.total())));
  return op;
}

DiffOperator quantize_weyl(const Symbol& a, const DiffContext& ctx) {
  require_context(a, ctx);
  DiffOperator out(a.modes());
  for (const auto& [k, c] : a.terms()) {
    // Factor sequence of the monomial: kind 0 = phi factor, 1 = pi factor.
    std::vector<std::pair<int, unsigned>> seq;
    for (const auto& [m, x] : k.phi.entries())
      for (unsigned j = 0; j < x; ++j) seq.push_back({0, m});
    for (const auto& [m, x] : k.pi.entries())
      for (unsigned j = 0; j < x; ++j) seq.push_back({1, m});
    std::sort(seq.begin(), seq.end());
    DiffOperator sum(a.modes());
    long long count = 0;
    do {
      DiffOperator term = DiffOperator::identity(a.modes());
      for (const auto& [kind, m] : seq) {
        DiffOperator f = kind == 0 ? DiffOperator::multiplication(Symbol::phi(a.modes(), m))
                                   : DiffOperator::derivative(a.modes(), MultiIndex::unit(m),
                                                              ctx.lambda());
        term = compose(term, f);
      }
      sum += term;
      ++count;
    } while (std::next_permutation(seq.begin(), seq.end()));
    out += sum.scaled(c * HPoly(Scalar(make_rational(1, count))));
  }
  return out;
}

Symbol normal_symbol_of(const DiffOperator& op, const DiffContext& ctx) {
  if (op.modes() != ctx.modes) throw ValidationError("operator does not match the context mode space");
  Symbol out(op.modes());
  Scalar inv_c = Scalar::one() / ctx.lambda_coeff;
  for (const auto& [alpha, c] : op.terms()) {
    unsigned n = alpha.total();
    HPoly scale{inv_c.pow(n)};
    for (const auto& [k, hp] : c.terms()) out.add_term({k.phi, alpha}, hp.divided_by_h(n) * scale);
  }
  return out;
}

Symbol star_involution(const Symbol& a, const DiffContext& ctx) {
  return normal_symbol_of(adjoint(quantize_normal(a, ctx)), ctx);
}

}  // namespace fdq::star
