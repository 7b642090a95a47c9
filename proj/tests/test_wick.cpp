#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdq/wick.hpp"
#include "testutil.hpp"

using namespace fdq;
using namespace fdq::core;
using namespace fdq::star;

namespace {

std::vector<Rational> freqs(std::initializer_list<Rational> ws) { return {ws}; }

WickSymbol wconst(unsigned modes, const std::vector<Rational>& om, Scalar c) {
  WickSymbol w(modes, om);
  w.add_term({}, RootCoeff(HPoly(c)));
  return w;
}

}  // namespace

TEST_CASE("root coefficient arithmetic reduces radicals") {
  std::vector<Rational> om = freqs({Rational(3)});
  RootCoeff s1 = RootCoeff::root(1);
  RootCoeff sq = RootCoeff::mul(s1, s1, om);
  CHECK(sq == RootCoeff(HPoly(Scalar(6))));  // s^2 = 2*omega = 6
  RootCoeff mixed = RootCoeff(HPoly(Scalar(2))) + s1;
  RootCoeff sq2 = RootCoeff::mul(mixed, mixed, om);
  RootCoeff expect = RootCoeff(HPoly(Scalar(10))) + RootCoeff::root(1, HPoly(Scalar(4)));
  CHECK(sq2 == expect);
  CHECK(s1.conj() == s1);
}

TEST_CASE("wick validation") {
  CHECK_THROWS_AS(WickSymbol(1, freqs({Rational(0)})), ValidationError);
  CHECK_THROWS_AS(WickSymbol(1, freqs({Rational(-1)})), ValidationError);
  CHECK_THROWS_AS(WickSymbol(2, freqs({Rational(1)})), ValidationError);
  CHECK_THROWS_AS(wick_transform(Symbol::phi(1, 1), freqs({Rational(-2)})), ValidationError);
}

TEST_CASE("round trip is the identity") {
  std::mt19937_64 rng(0x31c40001);
  std::vector<Rational> om = freqs({Rational(1), make_rational(3, 2), Rational(2)});
  for (int it = 0; it < 40; ++it) {
    Symbol A = testutil::random_symbol(rng, 3, 4);
    CHECK(wick_inverse(wick_transform(A, om)) == A);
  }
  // and the other direction on basis elements
  Symbol phi = Symbol::phi(3, 2), pi = Symbol::pi(3, 2);
  CHECK(wick_inverse(wick_transform(phi, om)) == phi);
  CHECK(wick_inverse(wick_transform(pi, om)) == pi);
}

namespace {

// The phase-space bracket evaluated inside the radical ring, for elements
// written with x = phi and y = pi. Independent of wick_bracket.
WickSymbol phase_bracket(const WickSymbol& f, const WickSymbol& g) {
  WickSymbol r(f.modes(), f.omega());
  for (unsigned m = 1; m <= f.modes(); ++m) {
    r += f.derivative(WickSymbol::WVar::ABar, m) * g.derivative(WickSymbol::WVar::A, m);
    r -= f.derivative(WickSymbol::WVar::A, m) * g.derivative(WickSymbol::WVar::ABar, m);
  }
  return r;
}

// a_i and abar_i written in phi/pi variables with radical coefficients:
// a_i = (omega_i phi_i + i pi_i) s_i / (2 omega_i).
WickSymbol a_in_phase_space(unsigned modes, const std::vector<Rational>& om, unsigned i,
                            bool bar) {
  WickSymbol w(modes, om);
  Rational inv = Rational(1) / (Rational(2) * om[i - 1]);
  w.add_term({MultiIndex::unit(i), {}}, RootCoeff::root(i, HPoly(Scalar(om[i - 1] * inv))));
  w.add_term({{}, MultiIndex::unit(i)},
             RootCoeff::root(i, HPoly(Scalar(Rational(0), bar ? -inv : inv))));
  return w;
}

}  // namespace

TEST_CASE("transported bracket constant is i") {
  // {a_i, abar_j} = i delta_ij regardless of the frequencies.
  std::vector<Rational> om = freqs({make_rational(5, 3), Rational(4)});
  for (unsigned i = 1; i <= 2; ++i) {
    for (unsigned j = 1; j <= 2; ++j) {
      WickSymbol ai(2, om), abj(2, om);
      ai.add_term({MultiIndex::unit(i), {}}, RootCoeff(HPoly(Scalar::one())));
      abj.add_term({{}, MultiIndex::unit(j)}, RootCoeff(HPoly(Scalar::one())));
      WickSymbol br = wick_bracket(ai, abj);
      if (i == j) CHECK(br == wconst(2, om, Scalar::i()));
      else CHECK(br.is_zero());

      // the same constant by substituting into the phase-space bracket
      WickSymbol bsub = phase_bracket(a_in_phase_space(2, om, i, false),
                                      a_in_phase_space(2, om, j, true));
      if (i == j) CHECK(bsub == wconst(2, om, Scalar::i()));
      else CHECK(bsub.is_zero());
    }
  }
}

TEST_CASE("bracket transport") {
  std::mt19937_64 rng(0x31c40002);
  std::vector<Rational> om = freqs({Rational(1), make_rational(1, 2)});
  for (int it = 0; it < 30; ++it) {
    Symbol A = testutil::random_symbol(rng, 2, 3), B = testutil::random_symbol(rng, 2, 3);
    CHECK(wick_transform(poisson_bracket(A, B), om) ==
          wick_bracket(wick_transform(A, om), wick_transform(B, om)));
  }
}

TEST_CASE("harmonic hamiltonian diagonalizes") {
  std::vector<Rational> om = freqs({Rational(1)});
  Symbol H = Symbol::phi(1, 1, 2) + Symbol::pi(1, 1, 2);
  WickSymbol expect(1, om);
  expect.add_term({MultiIndex::unit(1), MultiIndex::unit(1)}, RootCoeff(HPoly(Scalar(2))));
  CHECK(wick_transform(H, om) == expect);
}

TEST_CASE("radical-carrying expressions do not collapse to symbols") {
  std::vector<Rational> om = freqs({Rational(1)});
  WickSymbol a(1, om);
  a.add_term({MultiIndex::unit(1), {}}, RootCoeff::root(1));
  CHECK_THROWS_AS(a.to_symbol(), ValidationError);
  CHECK_THROWS_AS(wick_inverse(a.scaled(RootCoeff::root(1))), ValidationError);
}
