#include "stratloc/cdga.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace stratloc {

namespace {

// Koszul sign for concatenating two ascending odd monomials; nullopt on
// a repeated factor.
std::optional<std::pair<CdgaElement::OddMask, int>> merge_masks(CdgaElement::OddMask a,
                                                                CdgaElement::OddMask b) {
    if (a & b) return std::nullopt;
    int inversions = 0;
    for (CdgaElement::OddMask rest = b; rest;) {
        int j = std::countr_zero(rest);
        rest &= rest - 1;
        inversions += std::popcount(a >> (j + 1));
    }
    return std::make_pair(a | b, (inversions % 2) ? -1 : 1);
}

} // namespace

KoszulCdga::KoszulCdga(std::size_t rank, std::vector<EvenVar> evens, std::vector<OddVar> odds)
    : rank_(rank), even_(std::move(evens)), odd_(std::move(odds)) {
    std::set<std::string> names;
    std::vector<Weight> even_weights;
    for (const auto& x : even_) {
        if (x.weight.rank() != rank_)
            throw input_error("even variable '" + x.name + "' has weight of wrong rank");
        if (x.name.empty() || !names.insert(x.name).second)
            throw input_error("duplicate or empty variable name '" + x.name + "'");
        even_weights.push_back(x.weight);
    }
    for (const auto& u : odd_) {
        if (u.weight.rank() != rank_)
            throw input_error("odd variable '" + u.name + "' has weight of wrong rank");
        if (u.name.empty() || !names.insert(u.name).second)
            throw input_error("duplicate or empty variable name '" + u.name + "'");
        if (u.differential.nvars() != even_.size())
            throw input_error("differential of '" + u.name + "' has wrong arity");
        if (!u.differential.is_zero()) {
            auto w = u.differential.homogeneous_weight(even_weights);
            if (!w)
                throw input_error("differential of '" + u.name + "' is not weight-homogeneous");
            if (!(*w == u.weight))
                throw input_error("differential of '" + u.name +
                                  "' has weight " + to_string(*w) +
                                  ", generator has weight " + to_string(u.weight));
        }
    }
    if (odd_.size() > 32) throw input_error("more than 32 odd generators are not supported");
}

BigradedCharacter KoszulCdga::generator_inventory() const {
    BigradedCharacter inv(rank_);
    for (const auto& x : even_) inv.add_term(x.weight, 0, 1);
    for (const auto& u : odd_) inv.add_term(u.weight, 1, 1);
    return inv;
}

CdgaElement CdgaElement::from_poly(const MultiPoly& p, std::size_t n_odd) {
    CdgaElement e(p.nvars(), n_odd);
    for (const auto& [exp, c] : p.terms()) e.add_term(exp, 0, c);
    return e;
}

CdgaElement CdgaElement::odd_variable(std::size_t n_even, std::size_t n_odd, std::size_t j) {
    CdgaElement e(n_even, n_odd);
    if (j >= n_odd) throw input_error("odd variable index out of range");
    e.add_term(MultiPoly::Exponents(n_even, 0), OddMask(1) << j, Rat(1));
    return e;
}

void CdgaElement::add_term(const MultiPoly::Exponents& e, OddMask m, const Rat& c) {
    if (e.size() != n_even_) throw input_error("cdga term arity mismatch");
    if (m >> n_odd_) throw input_error("odd mask out of range");
    if (c == 0) return;
    Key key{e, m};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

int CdgaElement::total_degree() const {
    int best = 0;
    for (const auto& [k, c] : terms_) {
        int d = std::popcount(k.second);
        for (int x : k.first) d += x;
        best = std::max(best, d);
    }
    return best;
}

std::optional<int> CdgaElement::homogeneous_degree() const {
    std::optional<int> deg;
    for (const auto& [k, c] : terms_) {
        int d = std::popcount(k.second);
        if (!deg) {
            deg = d;
        } else if (*deg != d) {
            return std::nullopt;
        }
    }
    return deg;
}

std::optional<Weight> CdgaElement::homogeneous_weight(const KoszulCdga& c) const {
    if (c.n_even() != n_even_ || c.n_odd() != n_odd_)
        throw input_error("element does not live over the given algebra");
    std::optional<Weight> found;
    for (const auto& [k, coeff] : terms_) {
        Weight w = Weight::zero(c.rank());
        for (std::size_t i = 0; i < k.first.size(); ++i)
            for (std::size_t j = 0; j < w.v.size(); ++j)
                w.v[j] += k.first[i] * c.evens()[i].weight.v[j];
        for (OddMask rest = k.second; rest;) {
            int j = std::countr_zero(rest);
            rest &= rest - 1;
            w = w + c.odds()[static_cast<std::size_t>(j)].weight;
        }
        if (!found) {
            found = w;
        } else if (!(*found == w)) {
            return std::nullopt;
        }
    }
    return found;
}

CdgaElement cdga_add(const CdgaElement& a, const CdgaElement& b) {
    if (a.n_even() != b.n_even() || a.n_odd() != b.n_odd())
        throw input_error("cdga element shape mismatch in addition");
    CdgaElement r = a;
    for (const auto& [k, c] : b.terms()) r.add_term(k.first, k.second, c);
    return r;
}

CdgaElement cdga_scale(const CdgaElement& a, const Rat& c) {
    CdgaElement r(a.n_even(), a.n_odd());
    if (c == 0) return r;
    for (const auto& [k, v] : a.terms()) r.add_term(k.first, k.second, v * c);
    return r;
}

CdgaElement cdga_mul(const CdgaElement& a, const CdgaElement& b) {
    if (a.n_even() != b.n_even() || a.n_odd() != b.n_odd())
        throw input_error("cdga element shape mismatch in product");
    CdgaElement r(a.n_even(), a.n_odd());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            auto merged = merge_masks(ka.second, kb.second);
            if (!merged) continue;
            MultiPoly::Exponents e = ka.first;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += kb.first[i];
            r.add_term(e, merged->first, ca * cb * merged->second);
        }
    return r;
}

CdgaElement cdga_apply_d(const KoszulCdga& c, const CdgaElement& a) {
    if (c.n_even() != a.n_even() || c.n_odd() != a.n_odd())
        throw input_error("element does not live over the given algebra");
    CdgaElement r(a.n_even(), a.n_odd());
    for (const auto& [k, coeff] : a.terms()) {
        int t = 0;
        for (CdgaElement::OddMask rest = k.second; rest; ++t) {
            int j = std::countr_zero(rest);
            rest &= rest - 1;
            const MultiPoly& f = c.odds()[static_cast<std::size_t>(j)].differential;
            Rat sign = (t % 2) ? Rat(-1) : Rat(1);
            CdgaElement::OddMask m = k.second & ~(CdgaElement::OddMask(1) << j);
            for (const auto& [fe, fc] : f.terms()) {
                MultiPoly::Exponents e = k.first;
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += fe[i];
                r.add_term(e, m, coeff * fc * sign);
            }
        }
    }
    return r;
}

CdgaElement cdga_kill_variables(const CdgaElement& a, const std::vector<bool>& even_killed,
                                const std::vector<bool>& odd_killed) {
    if (even_killed.size() != a.n_even() || odd_killed.size() != a.n_odd())
        throw input_error("kill mask shape mismatch");
    std::size_t kept_even = 0, kept_odd = 0;
    std::vector<int> odd_map(a.n_odd(), -1);
    for (bool k : even_killed)
        if (!k) ++kept_even;
    for (std::size_t j = 0; j < odd_killed.size(); ++j)
        if (!odd_killed[j]) odd_map[j] = static_cast<int>(kept_odd++);
    CdgaElement r(kept_even, kept_odd);
    for (const auto& [k, coeff] : a.terms()) {
        bool dead = false;
        MultiPoly::Exponents e;
        e.reserve(kept_even);
        for (std::size_t i = 0; i < k.first.size(); ++i) {
            if (even_killed[i]) {
                if (k.first[i] > 0) {
                    dead = true;
                    break;
                }
            } else {
                e.push_back(k.first[i]);
            }
        }
        if (dead) continue;
        CdgaElement::OddMask m = 0;
        for (CdgaElement::OddMask rest = k.second; rest;) {
            int j = std::countr_zero(rest);
            rest &= rest - 1;
            if (odd_killed[static_cast<std::size_t>(j)]) {
                dead = true;
                break;
            }
            m |= CdgaElement::OddMask(1) << odd_map[static_cast<std::size_t>(j)];
        }
        // re-indexing preserves the relative order of odd factors, so no
        // extra Koszul sign appears
        if (!dead) r.add_term(e, m, coeff);
    }
    return r;
}

TruncatedSeries chain_character(const KoszulCdga& c, const Cocharacter& eta,
                                std::int64_t cutoff) {
    if (eta.rank() != c.rank()) throw input_error("chain character rank mismatch");
    std::int64_t slack = 0;
    for (const auto& u : c.odds()) slack += std::max<std::int64_t>(0, pairing(eta, u.weight));
    for (const auto& x : c.evens()) {
        if (pairing(eta, x.weight) > -1)
            throw inapplicable_error("chain character does not converge: even variable '" +
                                     x.name + "' has eta-level " +
                                     std::to_string(pairing(eta, x.weight)));
    }
    std::int64_t work_cutoff = cutoff - slack;
    TruncatedSeries acc = TruncatedSeries::unit(eta, work_cutoff);
    for (const auto& x : c.evens()) {
        std::int64_t level = pairing(eta, x.weight);
        TruncatedSeries factor(eta, work_cutoff, c.rank());
        Weight pw = Weight::zero(c.rank());
        for (std::int64_t lv = 0; lv >= work_cutoff; lv += level) {
            factor.add_term(pw, 0, 1);
            pw = pw + x.weight;
        }
        acc = series_mul(acc, factor);
    }
    for (const auto& u : c.odds()) {
        TruncatedSeries factor(eta, work_cutoff, c.rank());
        factor.add_term(Weight::zero(c.rank()), 0, 1);
        factor.add_term(u.weight, 1, 1);
        acc = series_mul(acc, factor);
    }
    if (acc.cutoff() > cutoff)
        throw error("internal: chain character cutoff bookkeeping failed");
    TruncatedSeries out(eta, cutoff, c.rank());
    for (const auto& [k, v] : acc.terms()) out.add_term(k.w, k.degree, v);
    return out;
}

} // namespace stratloc
