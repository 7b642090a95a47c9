#include "fdq/enveloping.hpp"

#include <random>
#include <string>

namespace fdq::env {

using core::functional_derivative;
using core::TermKey;
using core::Var;

namespace {

std::string term_name(const TermKey& k) {
  std::string s = k.phi.str("phi");
  std::string p = k.pi.str("pi");
  if (!s.empty() && !p.empty()) return s + "*" + p;
  if (!s.empty()) return s;
  if (!p.empty()) return p;
  return "1";
}

}  // namespace

Generator make_generator(Symbol f, Symbol v) {
  core::require_same_space(f, v);
  for (const auto& [k, c] : f.terms())
    if (k.pi.total() != 0)
      throw ValidationError("generator f part must be pi-free, offending term: " + term_name(k));
  for (const auto& [k, c] : v.terms())
    if (k.pi.total() != 1)
      throw ValidationError("generator v part must have pi-degree exactly 1, offending term: " +
                            term_name(k));
  return {std::move(f), std::move(v)};
}

void DiffWord::add(std::vector<Generator> seq, HPoly c) {
  if (c.is_zero()) return;
  for (const auto& g : seq)
    if (g.f.modes() != modes_) throw ValidationError("generator lives on a different mode space");
  for (auto it = t_.begin(); it != t_.end(); ++it) {
    if (it->first == seq) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
      return;
    }
  }
  t_.emplace_back(std::move(seq), std::move(c));
}

DiffWord& DiffWord::operator+=(const DiffWord& o) {
  if (o.modes_ != modes_) throw ValidationError("words live on different mode spaces");
  if (&o == this) return *this = scaled(HPoly(Scalar(2)));
  for (const auto& [s, c] : o.t_) add(s, c);
  return *this;
}

DiffWord& DiffWord::operator-=(const DiffWord& o) {
  if (o.modes_ != modes_) throw ValidationError("words live on different mode spaces");
  if (&o == this) return *this = DiffWord(modes_);
  for (const auto& [s, c] : o.t_) add(s, -c);
  return *this;
}

DiffWord DiffWord::scaled(const HPoly& c) const {
  DiffWord r(modes_);
  if (c.is_zero()) return r;
  for (const auto& [s, k] : t_) r.add(s, k * c);
  return r;
}

DiffWord word_product(const DiffWord& a, const DiffWord& b) {
  if (a.modes() != b.modes()) throw ValidationError("words live on different mode spaces");
  DiffWord r(a.modes());
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      std::vector<Generator> seq = sa;
      seq.insert(seq.end(), sb.begin(), sb.end());
      r.add(std::move(seq), ca * cb);
    }
  }
  return r;
}

DiffWord involution(const DiffWord& w, const DiffContext& ctx) {
  if (w.modes() != ctx.modes) throw ValidationError("word does not match the context mode space");
  HPoly sign{Scalar(static_cast<long long>(ctx.involution_sign))};
  DiffWord r(w.modes());
  for (const auto& [seq, c] : w.terms()) {
    std::vector<Generator> rev;
    rev.reserve(seq.size());
    for (auto it = seq.rbegin(); it != seq.rend(); ++it)
      rev.push_back({core::conjugate(it->f), core::conjugate(it->v).scaled(sign)});
    r.add(std::move(rev), c.conj());
  }
  return r;
}

namespace {

// Rewriting tokens: a phi-monomial or a single pi factor. A string of tokens
// with an HPoly coefficient represents a normally-ordered product candidate.
struct Token {
  bool is_pi;
  unsigned mode;    // valid when is_pi
  MultiIndex mono;  // valid when !is_pi
};

struct Str {
  HPoly c;
  std::vector<Token> t;
};

// Expand one generator into token strings: the vector-field part becomes
// (coefficient monomial, pi) pairs plus the lambda/2 divergence, the f part
// plain monomials. This is the Eq-7 normal form of a single generator.
std::vector<Str> expand_generator(const Generator& g, const DiffContext& ctx) {
  std::vector<Str> out;
  for (const auto& [k, c] : g.f.terms()) out.push_back({c, {{false, 0, k.phi}}});
  HPoly half = ctx.lambda() * HPoly(Scalar(make_rational(1, 2)));
  for (unsigned m = 1; m <= ctx.modes; ++m) {
    Symbol vm = functional_derivative(g.v, Var::Pi, m);
    if (vm.is_zero()) continue;
    for (const auto& [k, c] : vm.terms())
      out.push_back({c, {{false, 0, k.phi}, {true, m, {}}}});
    Symbol div = functional_derivative(vm, Var::Phi, m);
    for (const auto& [k, c] : div.terms()) out.push_back({c * half, {{false, 0, k.phi}}});
  }
  return out;
}

// Redex kinds at adjacent positions. The rewrite measure
// (pi-left-of-phi inversions, string length, out-of-order pi pairs),
// ordered lexicographically, strictly decreases under every rule, so
// rewriting terminates regardless of the strategy.
enum class Redex { None, PiMono, MonoMono, PiSwap };

Redex redex_at(const Str& s, std::size_t p) {
  const Token& x = s.t[p];
  const Token& y = s.t[p + 1];
  if (x.is_pi && !y.is_pi) return Redex::PiMono;
  if (!x.is_pi && !y.is_pi) return Redex::MonoMono;
  if (x.is_pi && y.is_pi && x.mode > y.mode) return Redex::PiSwap;
  return Redex::None;
}

}  // namespace

DiffElement normal_form(const DiffWord& w, const DiffContext& ctx, Strategy strategy,
                        std::uint64_t seed) {
  if (w.modes() != ctx.modes) throw ValidationError("word does not match the context mode space");
  std::mt19937_64 rng(seed);
  Symbol result(w.modes());

  std::vector<Str> work;
  for (const auto& [seq, c] : w.terms()) {
    std::vector<Str> strings{{c, {}}};
    for (const auto& g : seq) {
      std::vector<Str> parts = expand_generator(g, ctx);
      std::vector<Str> next;
      next.reserve(strings.size() * parts.size());
      for (const auto& s : strings) {
        for (const auto& p : parts) {
          Str cat{s.c * p.c, s.t};
          cat.t.insert(cat.t.end(), p.t.begin(), p.t.end());
          next.push_back(std::move(cat));
        }
      }
      strings = std::move(next);
    }
    for (auto& s : strings) work.push_back(std::move(s));
  }

  while (!work.empty()) {
    Str s = std::move(work.back());
    work.pop_back();
    if (s.c.is_zero()) continue;

    // Collect redex positions and pick one by strategy.
    std::vector<std::size_t> redexes;
    for (std::size_t p = 0; p + 1 < s.t.size(); ++p)
      if (redex_at(s, p) != Redex::None) redexes.push_back(p);

    if (redexes.empty()) {
      MultiIndex phi, pi;
      for (const auto& tok : s.t) {
        if (tok.is_pi) pi = pi.plus(MultiIndex::unit(tok.mode));
        else phi = phi.plus(tok.mono);
      }
      result.add_term({phi, pi}, s.c);
      continue;
    }

    std::size_t p;
    switch (strategy) {
      case Strategy::Leftmost: p = redexes.front(); break;
      case Strategy::Rightmost: p = redexes.back(); break;
      default:
        p = redexes[std::uniform_int_distribution<std::size_t>(0, redexes.size() - 1)(rng)];
    }

    switch (redex_at(s, p)) {
      case Redex::PiMono: {
        // pi_i * g(phi) -> g(phi) * pi_i + lambda * dg/dphi_i
        unsigned m = s.t[p].mode;
        const MultiIndex mono = s.t[p + 1].mono;
        unsigned e = mono.get(m);
        if (e > 0) {
          Str d = s;
          d.c = s.c * ctx.lambda() * HPoly(Scalar(static_cast<long long>(e)));
          d.t[p] = {false, 0, mono.with(m, e - 1)};
          d.t.erase(d.t.begin() + static_cast<std::ptrdiff_t>(p) + 1);
          work.push_back(std::move(d));
        }
        std::swap(s.t[p], s.t[p + 1]);
        work.push_back(std::move(s));
        break;
      }
      case Redex::MonoMono: {
        s.t[p].mono = s.t[p].mono.plus(s.t[p + 1].mono);
        s.t.erase(s.t.begin() + static_cast<std::ptrdiff_t>(p) + 1);
        work.push_back(std::move(s));
        break;
      }
      case Redex::PiSwap: {
        std::swap(s.t[p], s.t[p + 1]);
        work.push_back(std::move(s));
        break;
      }
      case Redex::None: break;
    }
  }
  return result;
}

DiffOperator represent(const DiffWord& w, const DiffContext& ctx) {
  if (w.modes() != ctx.modes) throw ValidationError("word does not match the context mode space");
  unsigned n = w.modes();
  HPoly half = ctx.lambda() * HPoly(Scalar(make_rational(1, 2)));
  DiffOperator out(n);
  for (const auto& [seq, c] : w.terms()) {
    DiffOperator op = DiffOperator::identity(n);
    for (const auto& g : seq) {
      DiffOperator rho(n);
      if (!g.f.is_zero()) rho += DiffOperator::multiplication(g.f);
      for (unsigned m = 1; m <= n; ++m) {
        Symbol vm = functional_derivative(g.v, Var::Pi, m);
        if (vm.is_zero()) continue;
        rho.add_term(MultiIndex::unit(m), vm.scaled(ctx.lambda()));
        Symbol div = functional_derivative(vm, Var::Phi, m);
        if (!div.is_zero()) rho += DiffOperator::multiplication(div.scaled(half));
      }
      op = compose(op, rho);
    }
    out += op.scaled(c);
  }
  return out;
}

}  // namespace fdq::env
