#include "fdq/symbol_json.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "fdq/errors.hpp"
#include "fdq/expr.hpp"

namespace fdq::cli {

using json = nlohmann::ordered_json;
using core::Symbol;

namespace {

json int_json(const mpz_class& z) {
    if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
    return z.get_str();
}

mpz_class int_from(const json& j, const char* what) {
    if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        try {
            return mpz_class(j.get<std::string>(), 10);
        } catch (const std::invalid_argument&) {
            throw ValidationError(std::string(what) + " is not a decimal integer string");
        }
    }
    throw ValidationError(std::string(what) + " must be an integer or a decimal string");
}

json scalar_json(const Scalar& c) {
    return json::array({int_json(c.re.get_num()), int_json(c.re.get_den()),
                        int_json(c.im.get_num()), int_json(c.im.get_den())});
}

Scalar scalar_from(const json& j) {
    if (!j.is_array() || j.size() != 4)
        throw ValidationError("coefficient entry must be [re_num, re_den, im_num, im_den]");
    mpz_class rn = int_from(j[0], "re_num"), rd = int_from(j[1], "re_den");
    mpz_class in = int_from(j[2], "im_num"), id = int_from(j[3], "im_den");
    if (rd == 0 || id == 0) throw ValidationError("coefficient with zero denominator");
    Rational re(rn, rd), im(in, id);
    re.canonicalize();
    im.canonicalize();
    return Scalar(std::move(re), std::move(im));
}

json hpoly_json(const HPoly& c) {
    json a = json::array();
    for (int k = 0; k <= c.degree(); ++k) a.push_back(scalar_json(c.coeff(static_cast<std::size_t>(k))));
    return a;
}

HPoly hpoly_from(const json& j) {
    if (!j.is_array()) throw ValidationError("coefficient must be an array of h-power entries");
    HPoly c;
    for (std::size_t k = 0; k < j.size(); ++k) c.set_coeff(k, scalar_from(j[k]));
    return c;
}

json dense_json(const MultiIndex& m, unsigned modes) {
    json a = json::array();
    for (unsigned x : m.dense(modes)) a.push_back(x);
    return a;
}

MultiIndex dense_from(const json& j, unsigned modes, const char* what) {
    if (!j.is_array() || j.size() != modes)
        throw ValidationError(std::string(what) + " exponents must be an array of length modes");
    std::vector<MultiIndex::Entry> entries;
    for (unsigned m = 0; m < modes; ++m) {
        const json& e = j[m];
        if (!e.is_number_integer() || e.get<std::int64_t>() < 0)
            throw ValidationError(std::string(what) + " exponent must be a nonnegative integer");
        auto x = e.get<std::int64_t>();
        if (x > 0) entries.push_back({m + 1, static_cast<unsigned>(x)});
    }
    return MultiIndex(std::move(entries));
}

unsigned modes_from(const json& j) {
    if (!j.is_object() || !j.contains("modes") || !j["modes"].is_number_integer())
        throw ValidationError("expected an object with an integer \"modes\" field");
    auto n = j["modes"].get<std::int64_t>();
    if (n < 1) throw ValidationError("mode space must have at least one mode");
    if (n > (std::int64_t{1} << 20)) throw ValidationError("mode count out of range");
    return static_cast<unsigned>(n);
}

}  // namespace

json symbol_to_json(const Symbol& s) {
    json out;
    out["modes"] = s.modes();
    json terms = json::array();
    for (const auto& [key, c] : s.terms()) {
        json t;
        t["phi"] = dense_json(key.phi, s.modes());
        t["pi"] = dense_json(key.pi, s.modes());
        t["coeff"] = hpoly_json(c);
        terms.push_back(std::move(t));
    }
    out["terms"] = std::move(terms);
    return out;
}

Symbol symbol_from_json(const json& j) {
    unsigned modes = modes_from(j);
    if (!j.contains("terms") || !j["terms"].is_array())
        throw ValidationError("expected a \"terms\" array");
    Symbol s(modes);
    for (const json& t : j["terms"]) {
        if (!t.is_object() || !t.contains("phi") || !t.contains("pi") || !t.contains("coeff"))
            throw ValidationError("each term needs \"phi\", \"pi\" and \"coeff\" fields");
        s.add_term({dense_from(t["phi"], modes, "phi"), dense_from(t["pi"], modes, "pi")},
                   hpoly_from(t["coeff"]));
    }
    return s;
}

json context_to_json(const star::DiffContext& ctx) {
    json out;
    out["modes"] = ctx.modes;
    if (ctx.lambda_coeff == Scalar::one()) out["lambda"] = "h";
    else if (ctx.lambda_coeff == Scalar::i()) out["lambda"] = "ih";
    else if (ctx.lambda_coeff == -Scalar::i()) out["lambda"] = "-ih";
    else out["lambda"] = scalar_json(ctx.lambda_coeff);
    return out;
}

star::DiffContext context_from_json(const json& j) {
    unsigned modes = modes_from(j);
    if (!j.contains("lambda")) throw ValidationError("expected a \"lambda\" field");
    const json& l = j["lambda"];
    if (l.is_string()) return star::DiffContext::named(modes, l.get<std::string>());
    return {modes, scalar_from(l)};
}

json word_to_json(const env::DiffWord& w) {
    // Same deterministic term order as the canonical printer.
    std::vector<std::pair<std::string, const env::DiffWord::Term*>> rows;
    rows.reserve(w.terms().size());
    for (const auto& term : w.terms()) {
        std::string key;
        for (const auto& g : term.first)
            key += "D(" + print_canonical(g.f) + "; " + print_canonical(g.v) + ")";
        rows.emplace_back(std::move(key), &term);
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    json out;
    out["modes"] = w.modes();
    json terms = json::array();
    for (const auto& [key, term] : rows) {
        json t;
        t["coeff"] = hpoly_json(term->second);
        json gens = json::array();
        for (const auto& g : term->first) {
            json gj;
            gj["f"] = symbol_to_json(g.f);
            gj["v"] = symbol_to_json(g.v);
            gens.push_back(std::move(gj));
        }
        t["gens"] = std::move(gens);
        terms.push_back(std::move(t));
    }
    out["terms"] = std::move(terms);
    return out;
}

json wick_to_json(const star::WickSymbol& w) {
    json out;
    out["modes"] = w.modes();
    json om = json::array();
    for (const auto& o : w.omega())
        om.push_back(json::array({int_json(o.get_num()), int_json(o.get_den())}));
    out["omega"] = std::move(om);
    json terms = json::array();
    for (const auto& [key, rc] : w.terms()) {
        json t;
        t["a"] = dense_json(key.phi, w.modes());
        t["ab"] = dense_json(key.pi, w.modes());
        json coeff = json::array();
        for (const auto& [mask, c] : rc.m) {
            json part;
            json roots = json::array();
            for (unsigned mode = 1; mode <= w.modes(); ++mode)
                if (mask & (1u << (mode - 1))) roots.push_back(mode);
            part["roots"] = std::move(roots);
            part["c"] = hpoly_json(c);
            coeff.push_back(std::move(part));
        }
        t["coeff"] = std::move(coeff);
        terms.push_back(std::move(t));
    }
    out["terms"] = std::move(terms);
    return out;
}

}  // namespace fdq::cli
