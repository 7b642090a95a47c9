#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdq/star.hpp"
#include "testutil.hpp"

using namespace fdq;
using namespace fdq::core;
using namespace fdq::star;

namespace {

Symbol hc(unsigned modes, unsigned pow, Scalar c) {
  return Symbol::constant(modes, HPoly::h(pow, c));
}

// Every monomial phi^alpha of degree <= d over the given mode space.
std::vector<Symbol> monomials_up_to(unsigned modes, unsigned d) {
  std::vector<Symbol> out;
  for (unsigned n = 0; n <= d; ++n)
    for_each_multi_index(modes, n, [&](const MultiIndex& a) {
      out.push_back(Symbol::monomial(modes, a, {}, HPoly(Scalar::one())));
    });
  return out;
}

}  // namespace

TEST_CASE("diff context validation") {
  CHECK(DiffContext::named(1, "h").involution_sign == -1);
  CHECK(DiffContext::named(1, "ih").involution_sign == +1);
  CHECK(DiffContext::named(1, "-ih").involution_sign == +1);
  CHECK(DiffContext::named(2, "-ih").lambda() == HPoly::h(1, -Scalar::i()));
  CHECK_THROWS_AS(DiffContext(1, Scalar::zero()), ValidationError);
  CHECK_THROWS_AS(DiffContext(1, Scalar::of(1, 1, 1, 1)), ValidationError);
  CHECK_THROWS_AS(DiffContext::named(1, "2h"), ValidationError);
}

TEST_CASE("normal star pinned examples") {
  unsigned N = 1;
  DiffContext mih = DiffContext::named(N, "-ih");
  Symbol phi = Symbol::phi(N, 1), pi = Symbol::pi(N, 1);

  CHECK(normal_star(pi, phi, mih) == phi * pi + hc(N, 1, -Scalar::i()));
  CHECK(normal_star(phi, pi, mih) == phi * pi);
  CHECK(normal_star(phi, pi, DiffContext::named(N, "h")) == phi * pi);
  CHECK(normal_star(pi * pi, phi * phi, mih) ==
        phi * phi * pi * pi + (phi * pi).scaled(HPoly::h(1, Scalar::of(0, 1, -4, 1))) +
            hc(N, 2, Scalar(-2)));
  CHECK(normal_star(pi, phi, DiffContext::named(N, "ih")) == phi * pi + hc(N, 1, Scalar::i()));
  CHECK_THROWS_AS(normal_star(Symbol::phi(1, 1), Symbol::phi(2, 1), mih), ValidationError);
}

TEST_CASE("normal star operator-composition oracle") {
  std::mt19937_64 rng(0x57a20001);
  auto test_mons = monomials_up_to(2, 4);
  for (int it = 0; it < 40; ++it) {
    DiffContext ctx(2, it % 2 ? Scalar::one() : -Scalar::i());
    Symbol A = testutil::random_symbol(rng, 2, 3), B = testutil::random_symbol(rng, 2, 3);
    DiffOperator lhs = quantize_normal(normal_star(A, B, ctx), ctx);
    DiffOperator rhs = compose(quantize_normal(A, ctx), quantize_normal(B, ctx));
    CHECK(lhs == rhs);
    for (const auto& m : test_mons) CHECK(lhs.apply(m) == rhs.apply(m));
  }
}

TEST_CASE("weyl star pinned examples") {
  unsigned N = 1;
  DiffContext mih = DiffContext::named(N, "-ih");
  Symbol phi = Symbol::phi(N, 1), pi = Symbol::pi(N, 1);

  CHECK(weyl_star(pi, phi, mih) == phi * pi + hc(N, 1, Scalar::of(0, 1, -1, 2)));
  // pi^2 *W phi^2 = phi^2 pi^2 + 2 lambda phi pi + lambda^2/2; lambda = -ih.
  CHECK(weyl_star(pi * pi, phi * phi, mih) ==
        phi * phi * pi * pi + (phi * pi).scaled(HPoly::h(1, Scalar::of(0, 1, -2, 1))) +
            hc(N, 2, Scalar(make_rational(-1, 2))));
  Symbol one = Symbol::constant(N, HPoly(Scalar::one()));
  std::mt19937_64 rng(7);
  Symbol B = testutil::random_symbol(rng, N, 4);
  CHECK(weyl_star(one, B, mih) == B);
  CHECK(weyl_star(B, one, mih) == B);
}

TEST_CASE("weyl star commutator matches bracket orientation") {
  unsigned N = 1;
  for (const char* name : {"h", "ih", "-ih"}) {
    DiffContext ctx = DiffContext::named(N, name);
    Symbol phi = Symbol::phi(N, 1), pi = Symbol::pi(N, 1);
    Symbol comm = weyl_star(pi, phi, ctx) - weyl_star(phi, pi, ctx);
    CHECK(comm == Symbol::constant(N, ctx.lambda()));
  }
}

TEST_CASE("star products: associativity, unit, classical limit, correspondence") {
  std::mt19937_64 rng(0x57a20002);
  for (int it = 0; it < 30; ++it) {
    unsigned N = 1 + it % 2;
    DiffContext ctx(N, it % 2 ? Scalar::i() : Scalar::one());
    Symbol A = testutil::random_symbol(rng, N, 3), B = testutil::random_symbol(rng, N, 3),
           C = testutil::random_symbol(rng, N, 3);
    CHECK(normal_star(normal_star(A, B, ctx), C, ctx) == normal_star(A, normal_star(B, C, ctx), ctx));
    CHECK(weyl_star(weyl_star(A, B, ctx), C, ctx) == weyl_star(A, weyl_star(B, C, ctx), ctx));

    Symbol prod = A * B;
    CHECK(normal_star(A, B, ctx).h_component(0) == prod.h_component(0));
    CHECK(weyl_star(A, B, ctx).h_component(0) == prod.h_component(0));

    Symbol br = poisson_bracket(A, B).scaled(ctx.lambda());
    Symbol cn = normal_star(A, B, ctx) - normal_star(B, A, ctx) - br;
    Symbol cw = weyl_star(A, B, ctx) - weyl_star(B, A, ctx) - br;
    CHECK((cn.is_zero() || cn.min_h_degree() >= 2));
    CHECK((cw.is_zero() || cw.min_h_degree() >= 2));
  }
}

TEST_CASE("ordering transform pinned examples") {
  unsigned N = 1;
  DiffContext mih = DiffContext::named(N, "-ih");
  Symbol phi = Symbol::phi(N, 1), pi = Symbol::pi(N, 1);

  CHECK(ordering_transform(phi * pi, mih, Direction::WeylToNormal) ==
        phi * pi + hc(N, 1, Scalar::of(0, 1, -1, 2)));
  CHECK(ordering_transform(phi * phi, mih, Direction::WeylToNormal) == phi * phi);
  for (const char* name : {"h", "ih", "-ih"}) {
    DiffContext ctx = DiffContext::named(N, name);
    Symbol lam = Symbol::constant(N, ctx.lambda());
    Symbol expect = phi * phi * pi * pi + (phi * pi).scaled(HPoly(Scalar(2)) * ctx.lambda()) +
                    Symbol::constant(N, ctx.lambda_pow(2) * HPoly(Scalar(make_rational(1, 2))));
    CHECK(ordering_transform(phi * phi * pi * pi, ctx, Direction::WeylToNormal) == expect);
  }
}

TEST_CASE("ordering transform properties") {
  std::mt19937_64 rng(0x57a20003);
  for (int it = 0; it < 30; ++it) {
    unsigned N = 1 + it % 3;
    DiffContext ctx(N, it % 2 ? -Scalar::i() : Scalar::one());
    Symbol A = testutil::random_symbol(rng, N, 4), B = testutil::random_symbol(rng, N, 4);

    Symbol rt = ordering_transform(ordering_transform(A, ctx, Direction::WeylToNormal), ctx,
                                   Direction::NormalToWeyl);
    CHECK(rt == A);

    Symbol diff = ordering_transform(A, ctx, Direction::WeylToNormal) - A;
    CHECK((diff.is_zero() || diff.min_h_degree() >= 1));

    // Intertwining: R(A *W B) = R(A) *N R(B).
    Symbol lhs = ordering_transform(weyl_star(A, B, ctx), ctx, Direction::WeylToNormal);
    Symbol rhs = normal_star(ordering_transform(A, ctx, Direction::WeylToNormal),
                             ordering_transform(B, ctx, Direction::WeylToNormal), ctx);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("quantize_normal pinned examples and round trip") {
  unsigned N = 1;
  DiffContext mih = DiffContext::named(N, "-ih");
  Symbol phi = Symbol::phi(N, 1), pi = Symbol::pi(N, 1);

  CHECK(quantize_normal(phi, mih) == DiffOperator::multiplication(phi));
  CHECK(quantize_normal(pi, mih) ==
        DiffOperator::derivative(N, MultiIndex::unit(1), HPoly::h(1, -Scalar::i())));
  DiffOperator expected(N);
  expected.add_term(MultiIndex::unit(1), phi.scaled(HPoly::h(1, -Scalar::i())));
  CHECK(quantize_normal(phi * pi, mih) == expected);

  std::mt19937_64 rng(0x57a20004);
  for (int it = 0; it < 30; ++it) {
    DiffContext ctx(2, it % 2 ? Scalar::i() : Scalar::one());
    Symbol A = testutil::random_symbol(rng, 2, 4);
    CHECK(normal_symbol_of(quantize_normal(A, ctx), ctx) == A);
  }
}

TEST_CASE("quantize_weyl pinned examples") {
  unsigned N = 1;
  DiffContext mih = DiffContext::named(N, "-ih");
  Symbol phi = Symbol::phi(N, 1), pi = Symbol::pi(N, 1);

  DiffOperator expected(N);
  expected.add_term(MultiIndex::unit(1), phi.scaled(HPoly::h(1, -Scalar::i())));
  expected.add_term({}, Symbol::constant(N, HPoly::h(1, Scalar::of(0, 1, -1, 2))));
  CHECK(quantize_weyl(phi * pi, mih) == expected);

  CHECK(quantize_weyl(phi * phi, mih) == DiffOperator::multiplication(phi * phi));
  CHECK(quantize_weyl(pi * pi, mih) ==
        DiffOperator::derivative(N, MultiIndex::unit(1, 2), HPoly::h(2, Scalar(-1))));
}

TEST_CASE("quantize_weyl agrees with transform-then-normal-quantize") {
  std::mt19937_64 rng(0x57a20005);
  for (int it = 0; it < 25; ++it) {
    unsigned N = 1 + it % 2;
    DiffContext ctx(N, it % 3 ? -Scalar::i() : Scalar::one());
    Symbol A = testutil::random_symbol(rng, N, 4);
    CHECK(quantize_weyl(A, ctx) ==
          quantize_normal(ordering_transform(A, ctx, Direction::WeylToNormal), ctx));
  }
}

TEST_CASE("weyl quantization of real symbols is formally self-adjoint") {
  std::mt19937_64 rng(0x57a20006);
  DiffContext ctx = DiffContext::named(2, "-ih");
  for (int it = 0; it < 20; ++it) {
    Symbol A = testutil::random_real_symbol(rng, 2, 3);
    DiffOperator op = quantize_weyl(A, ctx);
    CHECK(adjoint(op) == op);
  }
}

TEST_CASE("adjoint is an involution and anti-automorphism") {
  std::mt19937_64 rng(0x57a20007);
  DiffContext ctx = DiffContext::named(2, "-ih");
  for (int it = 0; it < 20; ++it) {
    DiffOperator a = quantize_normal(testutil::random_symbol(rng, 2, 3), ctx);
    DiffOperator b = quantize_normal(testutil::random_symbol(rng, 2, 3), ctx);
    CHECK(adjoint(adjoint(a)) == a);
    CHECK(adjoint(compose(a, b)) == compose(adjoint(b), adjoint(a)));
  }
}

TEST_CASE("star involution is an anti-automorphism of the normal product") {
  std::mt19937_64 rng(0x57a20008);
  for (int it = 0; it < 20; ++it) {
    unsigned N = 1 + it % 2;
    DiffContext ctx(N, it % 2 ? -Scalar::i() : Scalar::one());
    Symbol A = testutil::random_symbol(rng, N, 3), B = testutil::random_symbol(rng, N, 3);
    CHECK(star_involution(star_involution(A, ctx), ctx) == A);
    CHECK(star_involution(normal_star(A, B, ctx), ctx) ==
          normal_star(star_involution(B, ctx), star_involution(A, ctx), ctx));
  }
  DiffContext h1 = DiffContext::named(1, "h");
  CHECK(star_involution(Symbol::pi(1, 1), h1) == -Symbol::pi(1, 1));
  DiffContext mih = DiffContext::named(1, "-ih");
  CHECK(star_involution(Symbol::pi(1, 1), mih) == Symbol::pi(1, 1));
}
