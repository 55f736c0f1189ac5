#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "stratloc/complex.hpp"
#include "stratloc/stack.hpp"

namespace stratloc {

/// Polynomial in the named even variables.  Grammar: terms joined by
/// + and -, each term a *-separated list of factors, each factor a
/// rational constant (p or p/q) or a variable name with an optional
/// positive ^exponent.  No parentheses.
MultiPoly parse_polynomial(const std::string& text, const std::vector<std::string>& var_names);

/// Same grammar, but names may also resolve to odd generators of the
/// base algebra; factors multiply left to right with Koszul signs.
CdgaElement parse_algebra_element(const std::string& text, const KoszulCdga& base);

std::string polynomial_to_string(const MultiPoly& p, const std::vector<std::string>& var_names);
std::string algebra_element_to_string(const CdgaElement& e, const KoszulCdga& base);

/// Model schema: {"rank": r, "coordinates": [{"name", "action_weight"}],
/// "relations": [{"name", "degree": 1, "action_weight", "du"}],
/// "linearization": [..]}.
StackModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const StackModel& m);
StackModel model_from_text(const std::string& text);

/// Sheaf schema over a model: {"generators": [{"name", "degree",
/// "rep_weight"}], "differential": [{"target", "source", "entry"}]}.
/// Generator weights are representation weights; entries may use the
/// model's coordinate and relation names.
FreeComplex sheaf_from_json(const StackModel& m, const nlohmann::json& j);
nlohmann::json sheaf_to_json(const FreeComplex& f);
FreeComplex sheaf_from_text(const StackModel& m, const std::string& text);

} // namespace stratloc
