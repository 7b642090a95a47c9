#pragma once

#include <json.hpp>

#include "fdq/enveloping.hpp"
#include "fdq/star.hpp"
#include "fdq/symbol.hpp"
#include "fdq/wick.hpp"

namespace fdq::cli {

// Interchange form. A symbol is
//   {"modes": N, "terms": [{"phi": [e1..eN], "pi": [e1..eN],
//                           "coeff": [[re_num, re_den, im_num, im_den], ...]}]}
// with terms in canonical order and coefficients dense in ascending powers of
// h. Integer components are JSON integers when they fit in 64 bits and
// decimal strings otherwise, so the round trip is exact for any value.
nlohmann::ordered_json symbol_to_json(const core::Symbol& s);
core::Symbol symbol_from_json(const nlohmann::ordered_json& j);

// {"modes": N, "lambda": "h" | "ih" | "-ih" | [re_num, re_den, im_num, im_den]}
nlohmann::ordered_json context_to_json(const star::DiffContext& ctx);
star::DiffContext context_from_json(const nlohmann::ordered_json& j);

// Output-only forms for the remaining value kinds.
nlohmann::ordered_json word_to_json(const env::DiffWord& w);
nlohmann::ordered_json wick_to_json(const star::WickSymbol& w);

}  // namespace fdq::cli
