#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fdq/enveloping.hpp"
#include "fdq/symbol.hpp"
#include "fdq/wick.hpp"

namespace fdq::cli {

// Parsed expression tree. Positions are byte offsets into the source text and
// are carried through so evaluation errors can point at the offending atom.
struct Expr {
    enum class Kind {
        Add,
        Sub,
        Neg,
        Mul,
        Pow,
        Phi,
        Pi,
        A,
        ABar,
        Root,
        H,
        I,
        Rat,
        Gen,
    };

    Kind kind;
    std::size_t pos = 0;
    std::vector<Expr> kids;  // Add/Sub/Mul: 2, Neg: 1, Pow: 1, Gen: 2 (f, v)
    unsigned index = 0;      // mode for Phi/Pi/A/ABar/Root, exponent for Pow
    Rational value;          // Rat only
};

// Grammar:
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' nat)?
//   atom   := 'phi[' nat ']' | 'pi[' nat ']' | 'a[' nat ']' | 'ab[' nat ']'
//           | 's[' nat ']' | 'h' | 'i' | rational | '(' expr ')'
//           | 'D(' expr ';' expr ')'
// with rational := nat ('/' nat)?.  Whitespace is insignificant between
// tokens.  Throws ParseError with the byte offset of the failure.
Expr parse(std::string_view text);

// Evaluators. Each rejects atoms that do not belong to the requested domain
// (D(...) outside word expressions, a/ab/s outside wick expressions, phi/pi
// inside wick or word expressions) with ValidationError.
core::Symbol eval_symbol(const Expr& e, unsigned modes);
env::DiffWord eval_word(const Expr& e, unsigned modes);
star::WickSymbol eval_wick(const Expr& e, unsigned modes, std::vector<Rational> omega);

// Canonical printers. Output parses back to an equal value, and printing is
// idempotent: print(eval(parse(print(x)))) == print(x).
std::string print_canonical(const core::Symbol& s);
std::string print_canonical(const env::DiffWord& w);
std::string print_canonical(const star::WickSymbol& w);

}  // namespace fdq::cli
