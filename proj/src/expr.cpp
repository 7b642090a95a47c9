#include "fdq/expr.hpp"

#include <cctype>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fdq/errors.hpp"

namespace fdq::cli {

using core::Symbol;
using env::DiffWord;
using env::Generator;
using star::RootCoeff;
using star::WickSymbol;

namespace {

// Character-level recursive-descent parser. Whitespace is skipped between
// tokens but not inside names or rationals.
struct Parser {
    std::string_view s;
    std::size_t p = 0;

    static bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
    static bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
    static bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

    void skip() {
        while (p < s.size() && is_space(s[p])) ++p;
    }
    char peek() {
        skip();
        return p < s.size() ? s[p] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++p;
        return true;
    }
    void expect(char c, const std::string& context) {
        if (!eat(c))
            throw ParseError("expected '" + std::string(1, c) + "' " + context, p);
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, p); }

    // digits+, as an arbitrary-precision integer
    mpz_class digits() {
        skip();
        std::size_t start = p;
        while (p < s.size() && is_digit(s[p])) ++p;
        if (p == start) fail("expected digits");
        return mpz_class(std::string(s.substr(start, p - start)), 10);
    }

    // rational := nat ('/' nat)?  with the '/' adjacent to both operands
    Rational rational() {
        mpz_class num = digits();
        if (p + 1 < s.size() && s[p] == '/' && is_digit(s[p + 1])) {
            ++p;
            std::size_t den_pos = p;
            mpz_class den = digits();
            if (den == 0) throw ParseError("zero denominator", den_pos);
            Rational r(num, den);
            r.canonicalize();
            return r;
        }
        return Rational(num);
    }

    // small nonnegative integer for exponents and mode indices
    unsigned nat(const std::string& what) {
        skip();
        std::size_t start = p;
        if (p >= s.size() || !is_digit(s[p]))
            throw ParseError("expected nonnegative integer " + what, p);
        mpz_class n = digits();
        if (!n.fits_uint_p()) throw ParseError(what + " too large", start);
        return static_cast<unsigned>(n.get_ui());
    }

    std::string name() {
        skip();
        std::size_t start = p;
        while (p < s.size() && is_alpha(s[p])) ++p;
        return std::string(s.substr(start, p - start));
    }

    Expr indexed(Expr::Kind kind, std::size_t pos, const std::string& who) {
        expect('[', "after '" + who + "'");
        unsigned idx = nat("mode index");
        expect(']', "after mode index");
        Expr e{kind, pos, {}, idx, Rational()};
        return e;
    }

    Expr atom() {
        skip();
        std::size_t pos = p;
        char c = peek();
        if (c == '(') {
            ++p;
            Expr e = expr();
            expect(')', "to close '('");
            return e;
        }
        if (is_digit(c)) {
            Expr e{Expr::Kind::Rat, pos, {}, 0, rational()};
            return e;
        }
        if (is_alpha(c)) {
            std::string id = name();
            if (id == "phi") return indexed(Expr::Kind::Phi, pos, id);
            if (id == "pi") return indexed(Expr::Kind::Pi, pos, id);
            if (id == "a") return indexed(Expr::Kind::A, pos, id);
            if (id == "ab") return indexed(Expr::Kind::ABar, pos, id);
            if (id == "s") return indexed(Expr::Kind::Root, pos, id);
            if (id == "h") return Expr{Expr::Kind::H, pos, {}, 0, Rational()};
            if (id == "i") return Expr{Expr::Kind::I, pos, {}, 0, Rational()};
            if (id == "D") {
                expect('(', "after 'D'");
                Expr f = expr();
                expect(';', "between the parts of D(f; v)");
                Expr v = expr();
                expect(')', "to close D(");
                Expr e{Expr::Kind::Gen, pos, {}, 0, Rational()};
                e.kids.push_back(std::move(f));
                e.kids.push_back(std::move(v));
                return e;
            }
            throw ParseError("unknown name '" + id + "'", pos);
        }
        fail("expected an atom");
    }

    Expr factor() {
        Expr base = atom();
        if (eat('^')) {
            unsigned n = nat("exponent");
            Expr e{Expr::Kind::Pow, base.pos, {}, n, Rational()};
            e.kids.push_back(std::move(base));
            return e;
        }
        return base;
    }

    Expr term() {
        Expr e = factor();
        while (eat('*')) {
            Expr rhs = factor();
            Expr node{Expr::Kind::Mul, e.pos, {}, 0, Rational()};
            node.kids.push_back(std::move(e));
            node.kids.push_back(std::move(rhs));
            e = std::move(node);
        }
        return e;
    }

    Expr expr() {
        skip();
        std::size_t pos = p;
        bool negate = eat('-');
        Expr e = term();
        if (negate) {
            Expr n{Expr::Kind::Neg, pos, {}, 0, Rational()};
            n.kids.push_back(std::move(e));
            e = std::move(n);
        }
        for (;;) {
            char c = peek();
            if (c != '+' && c != '-') break;
            ++p;
            Expr rhs = term();
            Expr node{c == '+' ? Expr::Kind::Add : Expr::Kind::Sub, e.pos, {}, 0, Rational()};
            node.kids.push_back(std::move(e));
            node.kids.push_back(std::move(rhs));
            e = std::move(node);
        }
        return e;
    }
};

[[noreturn]] void wrong_domain(const Expr& e, const char* domain) {
    const char* what;
    switch (e.kind) {
        case Expr::Kind::Phi:
        case Expr::Kind::Pi:
            what = "phase-space variable";
            break;
        case Expr::Kind::A:
        case Expr::Kind::ABar:
        case Expr::Kind::Root:
            what = "wick variable";
            break;
        case Expr::Kind::Gen:
            what = "generator literal D(...)";
            break;
        default:
            what = "atom";
            break;
    }
    throw ValidationError(std::string(what) + " is not valid in a " + domain + " expression");
}

void check_mode(unsigned index, unsigned modes) {
    if (index == 0) throw ValidationError("mode indices are 1-based");
    if (index > modes) throw ValidationError("mode index exceeds mode space");
}

}  // namespace

Expr parse(std::string_view text) {
    Parser parser{text};
    Expr e = parser.expr();
    parser.skip();
    if (parser.p != text.size()) parser.fail("unexpected trailing input");
    return e;
}

Symbol eval_symbol(const Expr& e, unsigned modes) {
    using K = Expr::Kind;
    switch (e.kind) {
        case K::Add: return eval_symbol(e.kids[0], modes) + eval_symbol(e.kids[1], modes);
        case K::Sub: return eval_symbol(e.kids[0], modes) - eval_symbol(e.kids[1], modes);
        case K::Neg: return -eval_symbol(e.kids[0], modes);
        case K::Mul: return eval_symbol(e.kids[0], modes) * eval_symbol(e.kids[1], modes);
        case K::Pow: return eval_symbol(e.kids[0], modes).pow(e.index);
        case K::Phi:
            check_mode(e.index, modes);
            return Symbol::phi(modes, e.index);
        case K::Pi:
            check_mode(e.index, modes);
            return Symbol::pi(modes, e.index);
        case K::H: return Symbol::constant(modes, HPoly::h());
        case K::I: return Symbol::constant(modes, HPoly(Scalar::i()));
        case K::Rat: return Symbol::constant(modes, HPoly(Scalar(e.value)));
        default: wrong_domain(e, "phase-space");
    }
}

DiffWord eval_word(const Expr& e, unsigned modes) {
    using K = Expr::Kind;
    switch (e.kind) {
        case K::Add: return eval_word(e.kids[0], modes) + eval_word(e.kids[1], modes);
        case K::Sub: return eval_word(e.kids[0], modes) - eval_word(e.kids[1], modes);
        case K::Neg: return eval_word(e.kids[0], modes).scaled(HPoly(Scalar(-1)));
        case K::Mul: return word_product(eval_word(e.kids[0], modes), eval_word(e.kids[1], modes));
        case K::Pow: {
            DiffWord acc = DiffWord::unit(modes);
            DiffWord base = eval_word(e.kids[0], modes);
            for (unsigned k = 0; k < e.index; ++k) acc = word_product(acc, base);
            return acc;
        }
        case K::H: return DiffWord::unit(modes).scaled(HPoly::h());
        case K::I: return DiffWord::unit(modes).scaled(HPoly(Scalar::i()));
        case K::Rat: return DiffWord::unit(modes).scaled(HPoly(Scalar(e.value)));
        case K::Gen:
            return DiffWord::atom(
                env::make_generator(eval_symbol(e.kids[0], modes), eval_symbol(e.kids[1], modes)));
        default: wrong_domain(e, "word");
    }
}

WickSymbol eval_wick(const Expr& e, unsigned modes, std::vector<Rational> omega) {
    using K = Expr::Kind;
    auto constant = [&](RootCoeff c) {
        WickSymbol w(modes, omega);
        w.add_term({}, std::move(c));
        return w;
    };
    switch (e.kind) {
        case K::Add: return eval_wick(e.kids[0], modes, omega) + eval_wick(e.kids[1], modes, omega);
        case K::Sub: return eval_wick(e.kids[0], modes, omega) - eval_wick(e.kids[1], modes, omega);
        case K::Neg: return -eval_wick(e.kids[0], modes, std::move(omega));
        case K::Mul:
            return eval_wick(e.kids[0], modes, omega) * eval_wick(e.kids[1], modes, omega);
        case K::Pow: return eval_wick(e.kids[0], modes, std::move(omega)).pow(e.index);
        case K::A: {
            check_mode(e.index, modes);
            WickSymbol w(modes, std::move(omega));
            w.add_term({MultiIndex::unit(e.index), {}}, RootCoeff(HPoly(Scalar::one())));
            return w;
        }
        case K::ABar: {
            check_mode(e.index, modes);
            WickSymbol w(modes, std::move(omega));
            w.add_term({{}, MultiIndex::unit(e.index)}, RootCoeff(HPoly(Scalar::one())));
            return w;
        }
        case K::Root:
            check_mode(e.index, modes);
            return constant(RootCoeff::root(e.index));
        case K::H: return constant(RootCoeff(HPoly::h()));
        case K::I: return constant(RootCoeff(HPoly(Scalar::i())));
        case K::Rat: return constant(RootCoeff(HPoly(Scalar(e.value))));
        default: wrong_domain(e, "wick");
    }
}

namespace {

// One printed unit: a sign plus a '*'-joined factor body. Canonical output is
// the sign-interleaved concatenation of units.
void emit(std::string& out, bool negative, const std::string& body) {
    if (out.empty()) {
        if (negative) out += "-";
    } else {
        out += negative ? " - " : " + ";
    }
    out += body;
}

std::string join(const std::vector<std::string>& factors) {
    if (factors.empty()) return "1";
    std::string s = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) s += "*" + factors[k];
    return s;
}

struct CoeffText {
    bool negative = false;
    std::string factor;  // empty when the magnitude is exactly 1
};

CoeffText scalar_text(const Scalar& c) {
    CoeffText out;
    if (c.is_real()) {
        out.negative = sign_of(c.re) < 0;
        Rational a = abs(c.re);
        if (a != 1) out.factor = a.get_str();
    } else if (c.is_imaginary()) {
        out.negative = sign_of(c.im) < 0;
        Rational a = abs(c.im);
        out.factor = a == 1 ? "i" : a.get_str() + "*i";
    } else {
        std::string s = c.re.get_str();
        s += sign_of(c.im) < 0 ? "-" : "+";
        Rational a = abs(c.im);
        if (a != 1) s += a.get_str() + "*";
        s += "i";
        out.factor = "(" + s + ")";
    }
    return out;
}

std::string h_text(unsigned p) { return p == 1 ? "h" : "h^" + std::to_string(p); }

void append_indexed(std::vector<std::string>& factors, const MultiIndex& m, const char* var) {
    for (const auto& [mode, exp] : m.entries()) {
        std::string f = std::string(var) + "[" + std::to_string(mode) + "]";
        if (exp > 1) f += "^" + std::to_string(exp);
        factors.push_back(std::move(f));
    }
}

// Emit the units of one HPoly coefficient attached to a fixed monomial body.
void emit_hpoly(std::string& out, const HPoly& c, const std::vector<std::string>& body) {
    for (int p = 0; p <= c.degree(); ++p) {
        const Scalar& sc = c.coeff(static_cast<std::size_t>(p));
        if (sc.is_zero()) continue;
        CoeffText ct = scalar_text(sc);
        std::vector<std::string> factors;
        if (!ct.factor.empty()) factors.push_back(ct.factor);
        if (p > 0) factors.push_back(h_text(static_cast<unsigned>(p)));
        factors.insert(factors.end(), body.begin(), body.end());
        emit(out, ct.negative, join(factors));
    }
}

}  // namespace

std::string print_canonical(const Symbol& s) {
    std::string out;
    for (const auto& [key, c] : s.terms()) {
        std::vector<std::string> body;
        append_indexed(body, key.phi, "phi");
        append_indexed(body, key.pi, "pi");
        emit_hpoly(out, c, body);
    }
    return out.empty() ? "0" : out;
}

std::string print_canonical(const DiffWord& w) {
    // Word terms carry no intrinsic order; sort by the printed generator
    // sequence so output is deterministic and printing is idempotent.
    std::vector<std::pair<std::string, const HPoly*>> rows;
    rows.reserve(w.terms().size());
    for (const auto& [seq, c] : w.terms()) {
        std::string text;
        for (const auto& g : seq) {
            if (!text.empty()) text += "*";
            text += "D(" + print_canonical(g.f) + "; " + print_canonical(g.v) + ")";
        }
        rows.emplace_back(std::move(text), &c);
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::string out;
    for (const auto& [text, c] : rows) {
        std::vector<std::string> body;
        if (!text.empty()) body.push_back(text);
        emit_hpoly(out, *c, body);
    }
    return out.empty() ? "0" : out;
}

std::string print_canonical(const WickSymbol& w) {
    std::string out;
    for (const auto& [key, rc] : w.terms()) {
        for (const auto& [mask, c] : rc.m) {
            std::vector<std::string> body;
            for (unsigned mode = 1; mode <= w.modes(); ++mode)
                if (mask & (1u << (mode - 1))) body.push_back("s[" + std::to_string(mode) + "]");
            append_indexed(body, key.phi, "a");
            append_indexed(body, key.pi, "ab");
            emit_hpoly(out, c, body);
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace fdq::cli
