#include "stratloc/polynomial.hpp"

#include <algorithm>

namespace stratloc {

void MultiPoly::add_term(const Exponents& e, const Rat& c) {
    if (e.size() != nvars_) throw input_error("polynomial exponent arity mismatch");
    if (c == 0) return;
    for (int x : e)
        if (x < 0) throw input_error("negative exponent in polynomial term");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

int MultiPoly::total_degree() const {
    int best = 0;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int x : e) d += x;
        best = std::max(best, d);
    }
    return best;
}

std::optional<Weight> MultiPoly::homogeneous_weight(
    const std::vector<Weight>& var_weights) const {
    if (var_weights.size() != nvars_) throw input_error("variable weight arity mismatch");
    std::optional<Weight> found;
    for (const auto& [e, c] : terms_) {
        Weight w = var_weights.empty() ? Weight::zero(0) : Weight::zero(var_weights[0].rank());
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = 0; j < w.v.size(); ++j) w.v[j] += e[i] * var_weights[i].v[j];
        if (!found) {
            found = w;
        } else if (!(*found == w)) {
            return std::nullopt;
        }
    }
    return found;
}

MultiPoly poly_add(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars() != b.nvars()) throw input_error("polynomial arity mismatch in addition");
    MultiPoly r = a;
    for (const auto& [e, c] : b.terms()) r.add_term(e, c);
    return r;
}

MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars() != b.nvars()) throw input_error("polynomial arity mismatch in product");
    MultiPoly r(a.nvars());
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            MultiPoly::Exponents e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MultiPoly poly_scale(const MultiPoly& a, const Rat& c) {
    MultiPoly r(a.nvars());
    if (c == 0) return r;
    for (const auto& [e, k] : a.terms()) r.add_term(e, k * c);
    return r;
}

MultiPoly poly_kill_variables(const MultiPoly& a, const std::vector<bool>& killed) {
    if (killed.size() != a.nvars()) throw input_error("kill mask arity mismatch");
    std::size_t kept = 0;
    for (bool k : killed)
        if (!k) ++kept;
    MultiPoly r(kept);
    for (const auto& [e, c] : a.terms()) {
        bool dead = false;
        MultiPoly::Exponents ne;
        ne.reserve(kept);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (killed[i]) {
                if (e[i] > 0) {
                    dead = true;
                    break;
                }
            } else {
                ne.push_back(e[i]);
            }
        }
        if (!dead) r.add_term(ne, c);
    }
    return r;
}

} // namespace stratloc
