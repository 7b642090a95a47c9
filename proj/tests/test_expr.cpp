#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "fdq/expr.hpp"
#include "fdq/symbol_json.hpp"
#include "testutil.hpp"

using namespace fdq;
using namespace fdq::core;
using namespace fdq::cli;
using fdq::env::DiffWord;
using fdq::env::Generator;
using fdq::env::make_generator;
using fdq::star::DiffContext;
using fdq::star::WickSymbol;
using fdq::star::wick_transform;

namespace {

Symbol sym(const std::string& text, unsigned modes) { return eval_symbol(parse(text), modes); }

std::size_t parse_fail_pos(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("expected a parse error for: ", text);
  return static_cast<std::size_t>(-1);
}

Generator random_generator(std::mt19937_64& rng, unsigned modes, unsigned deg) {
  Symbol f = testutil::random_pi_free(rng, modes, deg, 2, 1);
  Symbol v(modes);
  std::uniform_int_distribution<int> coin(0, 1);
  for (unsigned m = 1; m <= modes; ++m)
    if (coin(rng)) v += testutil::random_pi_free(rng, modes, deg ? deg - 1 : 0) * Symbol::pi(modes, m);
  return make_generator(std::move(f), std::move(v));
}

DiffWord random_word(std::mt19937_64& rng, unsigned modes, unsigned max_terms) {
  std::uniform_int_distribution<unsigned> nterms(1, max_terms), len(0, 2);
  DiffWord w(modes);
  unsigned t = nterms(rng);
  for (unsigned j = 0; j < t; ++j) {
    std::vector<Generator> seq;
    unsigned L = len(rng);
    for (unsigned q = 0; q < L; ++q) seq.push_back(random_generator(rng, modes, 2));
    w.add(std::move(seq), testutil::random_hpoly(rng));
  }
  return w;
}

}  // namespace

TEST_CASE("grammar pinned forms") {
  unsigned N = 2;
  CHECK(sym("phi[1]^2 * pi[2]", N) ==
        Symbol::monomial(N, MultiIndex::unit(1, 2), MultiIndex::unit(2), HPoly(Scalar::one())));
  CHECK(sym("1/2 * h * pi[1]", N) ==
        Symbol::pi(N, 1).scaled(HPoly::h(1, Scalar(make_rational(1, 2)))));
  CHECK(sym("phi[1]*pi[1] - i*h", N) ==
        Symbol::phi(N, 1) * Symbol::pi(N, 1) - Symbol::constant(N, HPoly::h(1, Scalar::i())));
  CHECK(sym("(2+3*i)*phi[1]", N) == Symbol::phi(N, 1).scaled(HPoly(Scalar::of(2, 1, 3, 1))));
  CHECK(sym("-i", N) == Symbol::constant(N, HPoly(-Scalar::i())));
  CHECK(sym("-2*phi[1] + pi[1]", N) == Symbol::pi(N, 1) - Symbol::phi(N, 1).scaled(HPoly(Scalar(2))));
  CHECK(sym("(phi[1] + pi[1])^2", N) ==
        Symbol::phi(N, 1, 2) + (Symbol::phi(N, 1) * Symbol::pi(N, 1)).scaled(HPoly(Scalar(2))) +
            Symbol::pi(N, 1, 2));
  CHECK(sym("2*phi[1]^2", N) == Symbol::phi(N, 1, 2).scaled(HPoly(Scalar(2))));
  CHECK(sym("1 + 2*3", N) == Symbol::constant(N, HPoly(Scalar(7))));
  CHECK(sym("h^3", N) == Symbol::constant(N, HPoly::h(3)));
  CHECK(sym("phi[1]^0", N) == Symbol::constant(N, HPoly(Scalar::one())));
  CHECK(sym(" phi[ 2 ] ", N) == Symbol::phi(N, 2));
}

TEST_CASE("grammar rejects malformed input with positions") {
  CHECK(parse_fail_pos("phi[1]^-2") == 7);
  CHECK(parse_fail_pos("foo") == 0);
  CHECK(parse_fail_pos("2 +") == 3);
  CHECK(parse_fail_pos("(phi[1]") == 7);
  CHECK(parse_fail_pos("phi 1") == 4);
  CHECK(parse_fail_pos("1/0") == 2);
  CHECK(parse_fail_pos("2 2") == 2);
  CHECK(parse_fail_pos("phi[]") == 4);
  CHECK(parse_fail_pos("D(phi[1])") == 8);
  CHECK(parse_fail_pos("") == 0);
  CHECK(parse_fail_pos("2^^2") == 2);
}

TEST_CASE("evaluation rejects atoms outside their domain") {
  unsigned N = 2;
  CHECK_THROWS_AS(sym("phi[0]", N), ValidationError);
  CHECK_THROWS_AS(sym("phi[3]", N), ValidationError);
  CHECK_THROWS_AS(sym("D(phi[1]; 0)", N), ValidationError);
  CHECK_THROWS_AS(sym("a[1]", N), ValidationError);
  CHECK_THROWS_AS(eval_word(parse("phi[1]"), N), ValidationError);
  CHECK_THROWS_AS(eval_word(parse("a[1]"), N), ValidationError);
  std::vector<Rational> omega{make_rational(1), make_rational(2)};
  CHECK_THROWS_AS(eval_wick(parse("phi[1]"), N, omega), ValidationError);
  CHECK_THROWS_AS(eval_wick(parse("a[3]"), N, omega), ValidationError);
  CHECK_THROWS_AS(eval_wick(parse("D(0; pi[1])"), N, omega), ValidationError);
}

TEST_CASE("printer pinned forms") {
  unsigned N = 2;
  CHECK(print_canonical(Symbol::zero(N)) == "0");
  CHECK(print_canonical(Symbol::constant(N, HPoly(Scalar::one()))) == "1");
  CHECK(print_canonical(Symbol::constant(N, HPoly(Scalar(-1)))) == "-1");
  CHECK(print_canonical(Symbol::constant(N, HPoly::h())) == "h");
  CHECK(print_canonical(Symbol::constant(N, HPoly::h(2, Scalar(3)))) == "3*h^2");
  CHECK(print_canonical(sym("phi[1]*pi[1] - i*h", N)) == "phi[1]*pi[1] - i*h");
  CHECK(print_canonical(sym("(2+3*i)*phi[1]", N)) == "(2+3*i)*phi[1]");
  CHECK(print_canonical(sym("(2-i)*phi[1]", N)) == "(2-i)*phi[1]");
  CHECK(print_canonical(sym("(phi[1]+pi[1])^2", N)) == "phi[1]^2 + 2*phi[1]*pi[1] + pi[1]^2");
  CHECK(print_canonical(sym("phi[1]*(1+h)", N)) == "phi[1] + h*phi[1]");
  CHECK(print_canonical(sym("-1/2*i*h", N)) == "-1/2*i*h");
  CHECK(print_canonical(sym("phi[2]*phi[1]^2*pi[2]", N)) == "phi[1]^2*phi[2]*pi[2]");
  // higher total degree prints first; ties break on phi exponents
  CHECK(print_canonical(sym("pi[1] + phi[1]^3 + phi[2]", N)) == "phi[1]^3 + phi[2] + pi[1]");
}

TEST_CASE("symbol print parse round trip") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 1000; ++it) {
    Symbol s = testutil::random_symbol(rng, 3, 4, 4, 2);
    std::string text = print_canonical(s);
    Symbol back = sym(text, 3);
    CHECK(back == s);
    CHECK(print_canonical(back) == text);
  }
}

TEST_CASE("word print parse round trip") {
  std::mt19937_64 rng(43);
  DiffContext ctx = DiffContext::named(3, "ih");
  for (int it = 0; it < 200; ++it) {
    DiffWord w = random_word(rng, 3, 3);
    std::string text = print_canonical(w);
    DiffWord back = eval_word(parse(text), 3);
    CHECK(print_canonical(back) == text);
    CHECK(normal_form(back, ctx) == normal_form(w, ctx));
  }
}

TEST_CASE("word pinned forms") {
  unsigned N = 2;
  DiffWord w = eval_word(parse("D(0; pi[1]) * D(phi[1]; 0) - D(phi[1]; 0) * D(0; pi[1])"), N);
  DiffContext ctx = DiffContext::named(N, "-ih");
  CHECK(normal_form(w, ctx) == Symbol::constant(N, HPoly::h(1, -Scalar::i())));
  CHECK(print_canonical(DiffWord::unit(N)) == "1");
  CHECK(print_canonical(eval_word(parse("h * D(0; pi[2])"), N)) == "h*D(0; pi[2])");
  CHECK(print_canonical(eval_word(parse("D(0; pi[1]) - D(0; pi[1])"), N)) == "0");
}

TEST_CASE("wick print parse round trip") {
  std::mt19937_64 rng(47);
  std::vector<Rational> omega{make_rational(1), make_rational(3, 2), make_rational(2)};
  for (int it = 0; it < 150; ++it) {
    Symbol s = testutil::random_symbol(rng, 3, 3, 3, 1);
    WickSymbol w = wick_transform(s, omega);
    std::string text = print_canonical(w);
    WickSymbol back = eval_wick(parse(text), 3, omega);
    CHECK(back == w);
    CHECK(print_canonical(back) == text);
  }
}

TEST_CASE("wick printer pinned forms") {
  std::vector<Rational> omega{make_rational(2)};
  WickSymbol w = eval_wick(parse("s[1]*a[1] + ab[1]^2"), 1, omega);
  CHECK(print_canonical(w) == "ab[1]^2 + s[1]*a[1]");
  CHECK(eval_wick(parse("s[1]^2"), 1, omega) ==
        eval_wick(parse("4"), 1, omega));
}

TEST_CASE("symbol json round trip") {
  std::mt19937_64 rng(53);
  for (int it = 0; it < 300; ++it) {
    Symbol s = testutil::random_symbol(rng, 3, 4, 4, 2);
    auto j = symbol_to_json(s);
    CHECK(symbol_from_json(j) == s);
    auto reparsed = nlohmann::ordered_json::parse(j.dump());
    CHECK(symbol_from_json(reparsed) == s);
    CHECK(reparsed.dump() == j.dump());
  }
}

TEST_CASE("json survives integers beyond 64 bits") {
  mpz_class big = 1;
  big <<= 100;
  Rational r(big);
  Symbol s = Symbol::constant(2, HPoly(Scalar(r)));
  auto j = symbol_to_json(s);
  CHECK(j["terms"][0]["coeff"][0][0].is_string());
  CHECK(symbol_from_json(j) == s);
}

TEST_CASE("json rejects malformed input") {
  using nlohmann::ordered_json;
  CHECK_THROWS_AS(symbol_from_json(ordered_json::parse("{}")), ValidationError);
  CHECK_THROWS_AS(symbol_from_json(ordered_json::parse(R"({"modes":0,"terms":[]})")),
                  ValidationError);
  CHECK_THROWS_AS(
      symbol_from_json(ordered_json::parse(R"({"modes":2,"terms":[{"phi":[1],"pi":[0,0],"coeff":[]}]})")),
      ValidationError);
  CHECK_THROWS_AS(
      symbol_from_json(ordered_json::parse(
          R"({"modes":1,"terms":[{"phi":[1],"pi":[0],"coeff":[[1,0,0,1]]}]})")),
      ValidationError);
  CHECK_THROWS_AS(
      symbol_from_json(ordered_json::parse(R"({"modes":1,"terms":[{"phi":[-1],"pi":[0],"coeff":[]}]})")),
      ValidationError);
}

TEST_CASE("context json round trip") {
  for (const char* name : {"h", "ih", "-ih"}) {
    DiffContext ctx = DiffContext::named(2, name);
    auto j = context_to_json(ctx);
    DiffContext back = context_from_json(j);
    CHECK(back.modes == ctx.modes);
    CHECK(back.lambda_coeff == ctx.lambda_coeff);
    CHECK(back.involution_sign == ctx.involution_sign);
  }
  DiffContext q(3, Scalar(make_rational(0), make_rational(2, 5)));
  DiffContext back = context_from_json(context_to_json(q));
  CHECK(back.lambda_coeff == q.lambda_coeff);
  CHECK(back.involution_sign == +1);
  CHECK_THROWS_AS(context_from_json(nlohmann::ordered_json::parse(R"({"modes":2,"lambda":"x"})")),
                  ValidationError);
}

TEST_CASE("word and wick json are well formed") {
  unsigned N = 2;
  DiffWord w = eval_word(parse("D(phi[1]; 0) * D(0; pi[1]) + h"), N);
  auto jw = word_to_json(w);
  CHECK(jw["modes"] == 2);
  CHECK(jw["terms"].size() == 2);

  std::vector<Rational> omega{make_rational(1), make_rational(2)};
  WickSymbol ws = eval_wick(parse("s[2]*a[1]*ab[2] + 3"), N, omega);
  auto jx = wick_to_json(ws);
  CHECK(jx["omega"][1][0] == 2);
  CHECK(jx["terms"].size() == 2);
}
