#include "stratloc/homology.hpp"

#include <algorithm>
#include <bit>
#include <tuple>

namespace stratloc {

namespace {

// Monomial chain x^alpha u^beta e_gen, the working basis vector.
struct ChainKey {
    std::size_t gen;
    MultiPoly::Exponents exps;
    CdgaElement::OddMask mask;

    friend auto operator<=>(const ChainKey&, const ChainKey&) = default;
};

int poly_degree(const ChainKey& k) {
    int d = std::popcount(k.mask);
    for (int e : k.exps) d += e;
    return d;
}

using SparseCol = std::map<int, Rat>;

std::size_t sparse_rank(std::vector<SparseCol> cols) {
    std::map<int, SparseCol> pivots; // leading row -> normalized column
    std::size_t rank = 0;
    for (auto& col : cols) {
        while (!col.empty()) {
            auto lead = col.begin();
            auto p = pivots.find(lead->first);
            if (p == pivots.end()) break;
            const Rat factor = lead->second;
            for (const auto& [row, v] : p->second) {
                auto it = col.find(row);
                if (it == col.end()) {
                    col.emplace(row, -factor * v);
                } else {
                    it->second -= factor * v;
                    if (it->second == 0) col.erase(it);
                }
            }
        }
        if (!col.empty()) {
            const Rat lead = col.begin()->second;
            for (auto& [row, v] : col) v /= lead;
            const int row = col.begin()->first;
            pivots.emplace(row, std::move(col));
            ++rank;
        }
    }
    return rank;
}

struct DegreeSlice {
    std::vector<ChainKey> big;       // polynomial degree <= bound + growth
    std::map<ChainKey, int> index;   // index into big
    std::vector<int> small_indices;  // members with polynomial degree <= bound
};

// All exponent vectors with given total-degree budget whose weight equals
// `target`, in lexicographic DFS order.
void enumerate_exponents(const std::vector<EvenVar>& evens, int budget, const Weight& target,
                         std::size_t pos, MultiPoly::Exponents& current, Weight& acc,
                         std::vector<MultiPoly::Exponents>& out) {
    if (pos == evens.size()) {
        if (acc == target) out.push_back(current);
        return;
    }
    for (int e = 0; e <= budget; ++e) {
        current[pos] = e;
        enumerate_exponents(evens, budget - e, target, pos + 1, current, acc, out);
        acc = acc + evens[pos].weight;
    }
    for (int e = 0; e <= budget; ++e) acc = acc - evens[pos].weight;
    current[pos] = 0;
}

std::vector<std::int64_t> homology_dims(const FreeComplex& f, const Weight& w, int bound,
                                        int growth, int lo, int hi) {
    const KoszulCdga& base = f.base();
    const std::size_t n_odd = base.n_odd();

    // Bases per homological degree, target side at bound + growth.
    std::map<int, DegreeSlice> slices;
    for (int deg = lo - 1; deg <= hi; ++deg) slices[deg] = {};
    for (std::size_t l = 0; l < f.generators().size(); ++l) {
        const ComplexGen& g = f.generators()[l];
        const std::uint64_t mask_limit = std::uint64_t(1) << n_odd;
        for (std::uint64_t raw_mask = 0; raw_mask < mask_limit; ++raw_mask) {
            const auto mask = static_cast<CdgaElement::OddMask>(raw_mask);
            const int pop = std::popcount(mask);
            const int deg = g.degree + pop;
            if (deg < lo - 1 || deg > hi) continue;
            Weight target = w - g.weight;
            for (CdgaElement::OddMask rest = mask; rest;) {
                int j = std::countr_zero(rest);
                rest &= rest - 1;
                target = target - base.odds()[static_cast<std::size_t>(j)].weight;
            }
            std::vector<MultiPoly::Exponents> exps;
            MultiPoly::Exponents current(base.n_even(), 0);
            Weight acc = Weight::zero(base.rank());
            enumerate_exponents(base.evens(), bound + growth - pop, target, 0, current, acc,
                                exps);
            DegreeSlice& slice = slices[deg];
            for (auto& e : exps) slice.big.push_back({l, std::move(e), mask});
        }
    }
    for (auto& [deg, slice] : slices) {
        std::sort(slice.big.begin(), slice.big.end());
        for (int i = 0; i < static_cast<int>(slice.big.size()); ++i) {
            slice.index.emplace(slice.big[i], i);
            if (poly_degree(slice.big[i]) <= bound) slice.small_indices.push_back(i);
        }
    }

    // Differential columns from the degree-i small basis into the
    // degree-(i-1) big basis.
    auto matrix_at = [&](int deg) {
        const DegreeSlice& src = slices.at(deg);
        const DegreeSlice& dst = slices.at(deg - 1);
        std::vector<SparseCol> cols;
        cols.reserve(src.small_indices.size());
        for (int si : src.small_indices) {
            const ChainKey& key = src.big[static_cast<std::size_t>(si)];
            CdgaElement mono(base.n_even(), base.n_odd());
            mono.add_term(key.exps, key.mask, Rat(1));
            std::map<std::size_t, CdgaElement> image;
            image.emplace(key.gen, cdga_apply_d(base, mono));
            const bool neg = (std::popcount(key.mask) % 2) != 0;
            for (const auto& [ekey, m] : f.entries()) {
                if (ekey.second != key.gen) continue;
                CdgaElement part = cdga_mul(mono, m);
                if (neg) part = cdga_scale(part, Rat(-1));
                auto it = image.find(ekey.first);
                if (it == image.end())
                    image.emplace(ekey.first, std::move(part));
                else
                    it->second = cdga_add(it->second, part);
            }
            SparseCol col;
            for (const auto& [gen, elt] : image)
                for (const auto& [term, c] : elt.terms()) {
                    auto it = dst.index.find({gen, term.first, term.second});
                    if (it == dst.index.end())
                        throw error("internal: homology growth bound violated");
                    col[it->second] += c;
                    if (col[it->second] == 0) col.erase(it->second);
                }
            cols.push_back(std::move(col));
        }
        return cols;
    };

    std::map<int, std::vector<SparseCol>> mats;
    for (int deg = lo; deg <= hi; ++deg) mats[deg] = matrix_at(deg);
    mats[hi + 1] = {};

    std::vector<std::int64_t> dims;
    for (int deg = lo; deg <= hi; ++deg) {
        const std::size_t rank_here = sparse_rank(mats.at(deg));
        std::vector<SparseCol> augmented =
            (deg + 1 <= hi) ? mats.at(deg + 1) : std::vector<SparseCol>{};
        const std::size_t rank_next = sparse_rank(augmented);
        for (int si : slices.at(deg).small_indices) augmented.push_back({{si, Rat(1)}});
        const std::size_t rank_joint = sparse_rank(std::move(augmented));
        const std::int64_t h = static_cast<std::int64_t>(rank_joint) -
                               static_cast<std::int64_t>(rank_here) -
                               static_cast<std::int64_t>(rank_next);
        if (h < 0) throw error("internal: negative homology dimension");
        dims.push_back(h);
    }
    return dims;
}

} // namespace

std::int64_t HomologyResult::dim(int degree) const {
    const int i = degree - min_degree;
    if (i < 0 || i >= static_cast<int>(dims.size())) return 0;
    return dims[static_cast<std::size_t>(i)];
}

Int HomologyResult::euler() const {
    Int chi = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        const int deg = min_degree + static_cast<int>(i);
        if (deg % 2 == 0)
            chi += dims[i];
        else
            chi -= dims[i];
    }
    return chi;
}

HomologyResult weight_truncated_homology(const FreeComplex& f, const Weight& w,
                                         int degree_bound) {
    if (w.rank() != f.base().rank()) throw input_error("homology weight has wrong rank");
    if (degree_bound < 0) throw input_error("degree bound must be non-negative");
    if (f.generators().empty()) return {0, {}, true};

    const KoszulCdga& base = f.base();
    int growth = 0;
    for (const auto& u : base.odds())
        growth = std::max(growth, u.differential.total_degree() - 1);
    for (const auto& [key, m] : f.entries()) growth = std::max(growth, m.total_degree());

    int lo = f.generators()[0].degree, hi_gen = lo;
    for (const auto& g : f.generators()) {
        lo = std::min(lo, g.degree);
        hi_gen = std::max(hi_gen, g.degree);
    }
    const int hi = hi_gen + static_cast<int>(base.n_odd());

    HomologyResult result;
    result.min_degree = lo;
    result.dims = homology_dims(f, w, degree_bound, growth, lo, hi);
    result.stabilized =
        degree_bound >= 1 &&
        result.dims == homology_dims(f, w, degree_bound - 1, growth, lo, hi);
    return result;
}

HomologyResult weight0_truncated_homology(const FreeComplex& f, int degree_bound) {
    return weight_truncated_homology(f, Weight::zero(f.base().rank()), degree_bound);
}

} // namespace stratloc
