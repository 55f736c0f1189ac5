#include "stratloc/io.hpp"

#include <bit>
#include <cctype>
#include <map>

namespace stratloc {

namespace {

struct Token {
    enum Kind { Number, Name, Plus, Minus, Star, Caret, End } kind;
    std::string text;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j < s.size() && s[j] == '/') {
                ++j;
                if (j >= s.size() || !std::isdigit(static_cast<unsigned char>(s[j])))
                    throw input_error("malformed rational constant in '" + s + "'");
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            }
            out.push_back({Token::Number, s.substr(i, j - i)});
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({Token::Name, s.substr(i, j - i)});
            i = j;
        } else if (c == '+') {
            out.push_back({Token::Plus, "+"});
            ++i;
        } else if (c == '-') {
            out.push_back({Token::Minus, "-"});
            ++i;
        } else if (c == '*') {
            out.push_back({Token::Star, "*"});
            ++i;
        } else if (c == '^') {
            out.push_back({Token::Caret, "^"});
            ++i;
        } else {
            throw input_error(std::string("unexpected character '") + c + "' in polynomial '" +
                              s + "'");
        }
    }
    out.push_back({Token::End, ""});
    return out;
}

class ElementParser {
public:
    ElementParser(const std::string& text, const KoszulCdga& base)
        : text_(text), base_(base), tokens_(tokenize(text)) {
        for (std::size_t i = 0; i < base.n_even(); ++i) even_index_[base.evens()[i].name] = i;
        for (std::size_t j = 0; j < base.n_odd(); ++j) odd_index_[base.odds()[j].name] = j;
    }

    CdgaElement parse() {
        CdgaElement acc(base_.n_even(), base_.n_odd());
        bool negate = false;
        if (peek().kind == Token::Minus) {
            negate = true;
            ++pos_;
        } else if (peek().kind == Token::Plus) {
            ++pos_;
        }
        acc = cdga_add(acc, term(negate));
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            bool neg = peek().kind == Token::Minus;
            ++pos_;
            acc = cdga_add(acc, term(neg));
        }
        if (peek().kind != Token::End)
            throw input_error("trailing input in polynomial '" + text_ + "'");
        return acc;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }

    CdgaElement term(bool negate) {
        Rat coeff = negate ? Rat(-1) : Rat(1);
        CdgaElement acc =
            CdgaElement::from_poly(MultiPoly::constant(base_.n_even(), 1), base_.n_odd());
        bool first = true;
        while (true) {
            if (!first) {
                if (peek().kind != Token::Star) break;
                ++pos_;
            }
            first = false;
            const Token& t = peek();
            if (t.kind == Token::Number) {
                coeff *= parse_rational(t.text);
                ++pos_;
            } else if (t.kind == Token::Name) {
                std::string name = t.text;
                ++pos_;
                long exponent = 1;
                if (peek().kind == Token::Caret) {
                    ++pos_;
                    if (peek().kind != Token::Number ||
                        peek().text.find('/') != std::string::npos ||
                        peek().text.size() > 4)
                        throw input_error("exponent must be a plain integer in '" + text_ + "'");
                    exponent = std::stol(peek().text);
                    if (exponent > 512)
                        throw input_error("exponent too large in '" + text_ + "'");
                    ++pos_;
                }
                CdgaElement factor = resolve(name);
                for (long e = 0; e < exponent; ++e) acc = cdga_mul(acc, factor);
            } else {
                throw input_error("expected a constant or variable in '" + text_ + "'");
            }
        }
        return cdga_scale(acc, coeff);
    }

    CdgaElement resolve(const std::string& name) {
        auto ei = even_index_.find(name);
        if (ei != even_index_.end())
            return CdgaElement::from_poly(MultiPoly::variable(base_.n_even(), ei->second),
                                          base_.n_odd());
        auto oi = odd_index_.find(name);
        if (oi != odd_index_.end())
            return CdgaElement::odd_variable(base_.n_even(), base_.n_odd(), oi->second);
        throw input_error("unknown variable '" + name + "' in polynomial '" + text_ + "'");
    }

    const std::string& text_;
    const KoszulCdga& base_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::map<std::string, std::size_t> even_index_;
    std::map<std::string, std::size_t> odd_index_;
};

std::string coefficient_prefix(const Rat& c, bool has_factors) {
    Rat a = c < 0 ? Rat(-c) : c;
    if (a == 1 && has_factors) return "";
    return to_string(a) + (has_factors ? "*" : "");
}

const nlohmann::json& require_field(const nlohmann::json& j, const std::string& key,
                                    const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw input_error(where + ": missing field '" + key + "'");
    return *it;
}

Weight weight_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array()) throw input_error(where + ": expected an array of integers");
    Weight w;
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw input_error(where + ": expected an array of integers");
        w.v.push_back(e.get<std::int64_t>());
    }
    return w;
}

std::string string_field(const nlohmann::json& j, const std::string& key,
                         const std::string& where) {
    const auto& f = require_field(j, key, where);
    if (!f.is_string()) throw input_error(where + ": field '" + key + "' must be a string");
    return f.get<std::string>();
}

} // namespace

MultiPoly parse_polynomial(const std::string& text, const std::vector<std::string>& var_names) {
    std::vector<EvenVar> evens;
    evens.reserve(var_names.size());
    for (const auto& n : var_names) evens.push_back({n, Weight{{0}}});
    KoszulCdga scratch(1, std::move(evens), {});
    CdgaElement e = ElementParser(text, scratch).parse();
    MultiPoly p(var_names.size());
    for (const auto& [k, c] : e.terms()) p.add_term(k.first, c);
    return p;
}

CdgaElement parse_algebra_element(const std::string& text, const KoszulCdga& base) {
    return ElementParser(text, base).parse();
}

std::string polynomial_to_string(const MultiPoly& p, const std::vector<std::string>& var_names) {
    if (p.nvars() != var_names.size()) throw input_error("variable name list has wrong length");
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [e, c] : p.terms()) {
        std::string factors;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!factors.empty()) factors += "*";
            factors += var_names[i];
            if (e[i] > 1) factors += "^" + std::to_string(e[i]);
        }
        if (out.empty())
            out += (c < 0) ? "-" : "";
        else
            out += (c < 0) ? " - " : " + ";
        out += coefficient_prefix(c, !factors.empty()) + factors;
    }
    return out;
}

std::string algebra_element_to_string(const CdgaElement& e, const KoszulCdga& base) {
    if (e.n_even() != base.n_even() || e.n_odd() != base.n_odd())
        throw input_error("element does not live over the given algebra");
    if (e.is_zero()) return "0";
    std::string out;
    for (const auto& [k, c] : e.terms()) {
        std::string factors;
        for (std::size_t i = 0; i < k.first.size(); ++i) {
            if (k.first[i] == 0) continue;
            if (!factors.empty()) factors += "*";
            factors += base.evens()[i].name;
            if (k.first[i] > 1) factors += "^" + std::to_string(k.first[i]);
        }
        for (CdgaElement::OddMask rest = k.second; rest;) {
            int j = std::countr_zero(rest);
            rest &= rest - 1;
            if (!factors.empty()) factors += "*";
            factors += base.odds()[static_cast<std::size_t>(j)].name;
        }
        if (out.empty())
            out += (c < 0) ? "-" : "";
        else
            out += (c < 0) ? " - " : " + ";
        out += coefficient_prefix(c, !factors.empty()) + factors;
    }
    return out;
}

StackModel model_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw input_error("model: expected a JSON object");
    const auto& rank_field = require_field(j, "rank", "model");
    if (!rank_field.is_number_integer() || rank_field.get<std::int64_t>() <= 0)
        throw input_error("model: 'rank' must be a positive integer");
    const auto rank = rank_field.get<std::size_t>();

    std::vector<std::string> names;
    std::vector<Coordinate> coords;
    const auto& cj = require_field(j, "coordinates", "model");
    if (!cj.is_array()) throw input_error("model: 'coordinates' must be an array");
    for (std::size_t i = 0; i < cj.size(); ++i) {
        const std::string where = "coordinates[" + std::to_string(i) + "]";
        const auto& c = cj[i];
        if (!c.is_object()) throw input_error(where + ": expected an object");
        Coordinate coord;
        coord.name = string_field(c, "name", where);
        coord.action_weight =
            weight_from_json(require_field(c, "action_weight", where), where + ".action_weight");
        names.push_back(coord.name);
        coords.push_back(std::move(coord));
    }

    std::vector<Relation> rels;
    const auto& rj = require_field(j, "relations", "model");
    if (!rj.is_array()) throw input_error("model: 'relations' must be an array");
    for (std::size_t i = 0; i < rj.size(); ++i) {
        const std::string where = "relations[" + std::to_string(i) + "]";
        const auto& r = rj[i];
        if (!r.is_object()) throw input_error(where + ": expected an object");
        const auto& deg = require_field(r, "degree", where);
        if (!deg.is_number_integer() || deg.get<int>() != 1)
            throw input_error(where + ": 'degree' must be 1");
        rels.push_back({string_field(r, "name", where),
                        weight_from_json(require_field(r, "action_weight", where),
                                         where + ".action_weight"),
                        parse_polynomial(string_field(r, "du", where), names)});
    }

    Weight lin = weight_from_json(require_field(j, "linearization", "model"), "linearization");
    return StackModel(rank, std::move(coords), std::move(rels), std::move(lin));
}

nlohmann::json model_to_json(const StackModel& m) {
    nlohmann::json j;
    j["rank"] = m.rank();
    std::vector<std::string> names;
    j["coordinates"] = nlohmann::json::array();
    for (const auto& c : m.coordinates()) {
        names.push_back(c.name);
        j["coordinates"].push_back({{"name", c.name}, {"action_weight", c.action_weight.v}});
    }
    j["relations"] = nlohmann::json::array();
    for (const auto& r : m.relations()) {
        j["relations"].push_back({{"name", r.name},
                                  {"degree", 1},
                                  {"action_weight", r.action_weight.v},
                                  {"du", polynomial_to_string(r.du, names)}});
    }
    j["linearization"] = m.linearization().v;
    return j;
}

StackModel model_from_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw input_error("model: malformed JSON");
    return model_from_json(j);
}

FreeComplex sheaf_from_json(const StackModel& m, const nlohmann::json& j) {
    if (!j.is_object()) throw input_error("sheaf: expected a JSON object");
    std::vector<ComplexGen> gens;
    std::map<std::string, std::size_t> index;
    const auto& gj = require_field(j, "generators", "sheaf");
    if (!gj.is_array() || gj.empty())
        throw input_error("sheaf: 'generators' must be a non-empty array");
    for (std::size_t i = 0; i < gj.size(); ++i) {
        const std::string where = "generators[" + std::to_string(i) + "]";
        const auto& g = gj[i];
        if (!g.is_object()) throw input_error(where + ": expected an object");
        ComplexGen gen;
        gen.name = string_field(g, "name", where);
        const auto& deg = require_field(g, "degree", where);
        if (!deg.is_number_integer()) throw input_error(where + ": 'degree' must be an integer");
        gen.degree = deg.get<int>();
        gen.weight =
            weight_from_json(require_field(g, "rep_weight", where), where + ".rep_weight");
        if (gen.name.empty() || !index.emplace(gen.name, i).second)
            throw input_error(where + ": duplicate or empty generator name '" + gen.name + "'");
        gens.push_back(std::move(gen));
    }

    FreeComplex::EntryMap entries;
    if (j.contains("differential")) {
        const auto& dj = j.at("differential");
        if (!dj.is_array()) throw input_error("sheaf: 'differential' must be an array");
        for (std::size_t i = 0; i < dj.size(); ++i) {
            const std::string where = "differential[" + std::to_string(i) + "]";
            const auto& d = dj[i];
            if (!d.is_object()) throw input_error(where + ": expected an object");
            const std::string target = string_field(d, "target", where);
            const std::string source = string_field(d, "source", where);
            auto ti = index.find(target), si = index.find(source);
            if (ti == index.end())
                throw input_error(where + ": unknown target generator '" + target + "'");
            if (si == index.end())
                throw input_error(where + ": unknown source generator '" + source + "'");
            FreeComplex::EntryKey key{ti->second, si->second};
            if (entries.count(key))
                throw input_error(where + ": duplicate entry " + target + " <- " + source);
            entries.emplace(key,
                            parse_algebra_element(string_field(d, "entry", where), m.algebra()));
        }
    }
    return FreeComplex(m.algebra_ptr(), std::move(gens), std::move(entries));
}

nlohmann::json sheaf_to_json(const FreeComplex& f) {
    nlohmann::json j;
    j["generators"] = nlohmann::json::array();
    for (const auto& g : f.generators())
        j["generators"].push_back(
            {{"name", g.name}, {"degree", g.degree}, {"rep_weight", g.weight.v}});
    j["differential"] = nlohmann::json::array();
    for (const auto& [key, m] : f.entries())
        j["differential"].push_back({{"target", f.generators()[key.first].name},
                                     {"source", f.generators()[key.second].name},
                                     {"entry", algebra_element_to_string(m, f.base())}});
    return j;
}

FreeComplex sheaf_from_text(const StackModel& m, const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw input_error("sheaf: malformed JSON");
    return sheaf_from_json(m, j);
}

} // namespace stratloc
