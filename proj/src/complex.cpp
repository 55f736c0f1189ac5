#include "stratloc/complex.hpp"

#include <algorithm>

namespace stratloc {

namespace {

bool odd_int(int x) { return (x & 1) != 0; }

Rat sign_of(bool negative) { return negative ? Rat(-1) : Rat(1); }

} // namespace

FreeComplex::FreeComplex(std::shared_ptr<const KoszulCdga> base, std::vector<ComplexGen> gens,
                         EntryMap entries)
    : base_(std::move(base)), gens_(std::move(gens)) {
    if (!base_) throw input_error("complex requires a base algebra");
    for (const auto& g : gens_) {
        if (g.weight.rank() != base_->rank())
            throw input_error("generator '" + g.name + "' has weight of wrong rank");
    }
    for (auto& [key, m] : entries) {
        auto [k, l] = key;
        if (k >= gens_.size() || l >= gens_.size())
            throw input_error("differential entry index out of range");
        if (m.n_even() != base_->n_even() || m.n_odd() != base_->n_odd())
            throw input_error("differential entry does not live over the base algebra");
        if (m.is_zero()) continue;
        const int expected_degree = gens_[l].degree - gens_[k].degree - 1;
        auto deg = m.homogeneous_degree();
        if (!deg || *deg != expected_degree)
            throw input_error("entry " + gens_[k].name + " <- " + gens_[l].name +
                              " is not homogeneous of degree " + std::to_string(expected_degree));
        const Weight expected_weight = gens_[l].weight - gens_[k].weight;
        auto w = m.homogeneous_weight(*base_);
        if (!w || !(*w == expected_weight))
            throw input_error("entry " + gens_[k].name + " <- " + gens_[l].name +
                              " is not homogeneous of weight " + to_string(expected_weight));
        entries_.emplace(key, std::move(m));
    }

    // d^2 = 0, entry by entry: for each (target j, source l) the element
    // dC(M_jl) + sum_k (-1)^{deg M_kl} M_kl M_jk must vanish.
    std::vector<std::vector<std::pair<std::size_t, const CdgaElement*>>> by_source(gens_.size());
    for (const auto& [key, m] : entries_) by_source[key.second].push_back({key.first, &m});
    std::map<EntryKey, CdgaElement> acc;
    auto add_to = [&](std::size_t j, std::size_t l, CdgaElement x) {
        if (x.is_zero()) return;
        auto it = acc.find({j, l});
        if (it == acc.end())
            acc.emplace(EntryKey{j, l}, std::move(x));
        else
            it->second = cdga_add(it->second, x);
    };
    for (const auto& [key, m] : entries_) add_to(key.first, key.second, cdga_apply_d(*base_, m));
    for (std::size_t l = 0; l < gens_.size(); ++l)
        for (const auto& [k, mkl] : by_source[l]) {
            const bool neg = odd_int(*mkl->homogeneous_degree());
            for (const auto& [j, mjk] : by_source[k])
                add_to(j, l, cdga_scale(cdga_mul(*mkl, *mjk), sign_of(neg)));
        }
    for (const auto& [key, x] : acc) {
        if (!x.is_zero())
            throw input_error("differential does not square to zero at " +
                              gens_[key.first].name + " <- " + gens_[key.second].name);
    }
}

FreeComplex FreeComplex::unit(std::shared_ptr<const KoszulCdga> base) {
    if (!base) throw input_error("complex requires a base algebra");
    std::vector<ComplexGen> gens{{"e", 0, Weight::zero(base->rank())}};
    return FreeComplex(std::move(base), std::move(gens), {});
}

CdgaElement FreeComplex::entry(std::size_t k, std::size_t l) const {
    auto it = entries_.find({k, l});
    if (it != entries_.end()) return it->second;
    return CdgaElement(base_->n_even(), base_->n_odd());
}

BigradedCharacter FreeComplex::generator_character() const {
    BigradedCharacter c(base_->rank());
    for (const auto& g : gens_) c.add_term(g.weight, g.degree, 1);
    return c;
}

bool same_presentation(const FreeComplex& a, const FreeComplex& b) {
    return *a.base_ptr() == *b.base_ptr() && a.generators() == b.generators() &&
           a.entries() == b.entries();
}

FreeComplex complex_direct_sum(const FreeComplex& a, const FreeComplex& b) {
    if (!(*a.base_ptr() == *b.base_ptr()))
        throw input_error("direct sum requires the same base algebra");
    std::vector<ComplexGen> gens = a.generators();
    gens.insert(gens.end(), b.generators().begin(), b.generators().end());
    FreeComplex::EntryMap entries = a.entries();
    const std::size_t off = a.generators().size();
    for (const auto& [key, m] : b.entries())
        entries.emplace(FreeComplex::EntryKey{key.first + off, key.second + off}, m);
    return FreeComplex(a.base_ptr(), std::move(gens), std::move(entries));
}

FreeComplex complex_tensor(const FreeComplex& a, const FreeComplex& b) {
    if (!(*a.base_ptr() == *b.base_ptr()))
        throw input_error("tensor product requires the same base algebra");
    const auto& ga = a.generators();
    const auto& gb = b.generators();
    const std::size_t nb = gb.size();
    std::vector<ComplexGen> gens;
    gens.reserve(ga.size() * nb);
    for (const auto& x : ga)
        for (const auto& y : gb)
            gens.push_back({x.name + "*" + y.name, x.degree + y.degree, x.weight + y.weight});
    auto idx = [nb](std::size_t i, std::size_t j) { return i * nb + j; };
    FreeComplex::EntryMap entries;
    auto accumulate = [&](std::size_t k, std::size_t l, const CdgaElement& m) {
        auto it = entries.find({k, l});
        if (it == entries.end())
            entries.emplace(FreeComplex::EntryKey{k, l}, m);
        else
            it->second = cdga_add(it->second, m);
    };
    for (const auto& [key, m] : a.entries())
        for (std::size_t j = 0; j < nb; ++j) accumulate(idx(key.first, j), idx(key.second, j), m);
    for (const auto& [key, m] : b.entries()) {
        const int dm = *m.homogeneous_degree();
        for (std::size_t i = 0; i < ga.size(); ++i) {
            const bool neg = odd_int(ga[i].degree) && odd_int(1 + dm);
            accumulate(idx(i, key.first), idx(i, key.second), cdga_scale(m, sign_of(neg)));
        }
    }
    return FreeComplex(a.base_ptr(), std::move(gens), std::move(entries));
}

FreeComplex complex_dual(const FreeComplex& f) {
    const auto& gf = f.generators();
    std::vector<ComplexGen> gens;
    gens.reserve(gf.size());
    for (const auto& g : gf) gens.push_back({g.name + "'", -g.degree, -g.weight});
    FreeComplex::EntryMap entries;
    for (const auto& [key, m] : f.entries()) {
        auto [l, i] = key; // original: target l, source i
        const bool neg = !(odd_int(gf[l].degree) && odd_int(gf[i].degree + 1));
        entries.emplace(FreeComplex::EntryKey{i, l}, cdga_scale(m, sign_of(neg)));
    }
    return FreeComplex(f.base_ptr(), std::move(gens), std::move(entries));
}

FreeComplex complex_hom(const FreeComplex& f, const FreeComplex& g) {
    return complex_tensor(complex_dual(f), g);
}

FreeComplex complex_shift(const FreeComplex& f, int k) {
    std::vector<ComplexGen> gens = f.generators();
    for (auto& g : gens) g.degree += k;
    FreeComplex::EntryMap entries;
    for (const auto& [key, m] : f.entries()) {
        const bool neg = odd_int(k) && odd_int(1 + *m.homogeneous_degree());
        entries.emplace(key, cdga_scale(m, sign_of(neg)));
    }
    return FreeComplex(f.base_ptr(), std::move(gens), std::move(entries));
}

FreeComplex complex_twist(const FreeComplex& f, const Weight& w) {
    if (w.rank() != f.base().rank()) throw input_error("twist weight has wrong rank");
    std::vector<ComplexGen> gens = f.generators();
    for (auto& g : gens) g.weight = g.weight + w;
    return FreeComplex(f.base_ptr(), std::move(gens), f.entries());
}

FreeComplex complex_restrict(const FreeComplex& f, std::shared_ptr<const KoszulCdga> new_base,
                             const std::vector<bool>& even_killed,
                             const std::vector<bool>& odd_killed) {
    const KoszulCdga& old = f.base();
    if (!new_base) throw input_error("restriction requires a base algebra");
    if (even_killed.size() != old.n_even() || odd_killed.size() != old.n_odd())
        throw input_error("kill mask shape mismatch");

    std::vector<EvenVar> kept_even;
    for (std::size_t i = 0; i < old.n_even(); ++i)
        if (!even_killed[i]) kept_even.push_back(old.evens()[i]);
    std::vector<OddVar> kept_odd;
    for (std::size_t j = 0; j < old.n_odd(); ++j) {
        const OddVar& u = old.odds()[j];
        MultiPoly killed = poly_kill_variables(u.differential, even_killed);
        if (odd_killed[j]) {
            if (!killed.is_zero())
                throw input_error("cannot kill odd variable '" + u.name +
                                  "': its differential survives the quotient");
            continue;
        }
        kept_odd.push_back({u.name, u.weight, std::move(killed)});
    }
    KoszulCdga expected(old.rank(), std::move(kept_even), std::move(kept_odd));
    if (!(expected == *new_base))
        throw input_error("restriction target does not present the quotient algebra");

    FreeComplex::EntryMap entries;
    for (const auto& [key, m] : f.entries()) {
        CdgaElement r = cdga_kill_variables(m, even_killed, odd_killed);
        if (!r.is_zero()) entries.emplace(key, std::move(r));
    }
    return FreeComplex(std::move(new_base), f.generators(), std::move(entries));
}

} // namespace stratloc
