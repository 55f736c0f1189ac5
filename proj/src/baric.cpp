#include "stratloc/baric.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <utility>

#include "stratloc/cone.hpp"

namespace stratloc {

namespace {

// Restriction of a complex to the span of a generator subset, dropping
// every entry whose source or target falls outside.  `keep` is sorted.
FreeComplex span_of(const FreeComplex& f, const std::vector<std::size_t>& keep) {
    std::vector<std::size_t> where(f.generators().size(), SIZE_MAX);
    std::vector<ComplexGen> gens;
    gens.reserve(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        where[keep[i]] = i;
        gens.push_back(f.generators()[keep[i]]);
    }
    FreeComplex::EntryMap entries;
    for (const auto& [key, element] : f.entries()) {
        auto [target, source] = key;
        if (where[target] == SIZE_MAX || where[source] == SIZE_MAX) continue;
        entries.emplace(FreeComplex::EntryKey{where[target], where[source]}, element);
    }
    return FreeComplex(f.base_ptr(), std::move(gens), std::move(entries));
}

std::vector<std::size_t> killed_even_indices(const Stratum& s) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.killed_even.size(); ++i)
        if (s.killed_even[i]) idx.push_back(i);
    return idx;
}

} // namespace

BaricPieces baric_truncate(const FreeComplex& f, const Cocharacter& lambda, std::int64_t w) {
    const KoszulCdga& base = f.base();
    for (const auto& ev : base.evens())
        if (pairing(lambda, ev.weight) > 0)
            throw input_error("baric truncation requires a non-positively weighted base algebra: "
                              "even variable '" +
                              ev.name + "' has level " + std::to_string(pairing(lambda, ev.weight)));
    for (const auto& od : base.odds())
        if (pairing(lambda, od.weight) > 0)
            throw input_error("baric truncation requires a non-positively weighted base algebra: "
                              "odd variable '" +
                              od.name + "' has level " + std::to_string(pairing(lambda, od.weight)));

    std::vector<std::size_t> high, low;
    for (std::size_t i = 0; i < f.generators().size(); ++i) {
        if (pairing(lambda, f.generators()[i].weight) >= w)
            high.push_back(i);
        else
            low.push_back(i);
    }
    // Levels can only drop along the differential, so an entry out of a
    // >=w generator must land on a >=w generator.
    for (const auto& [key, element] : f.entries()) {
        auto [target, source] = key;
        std::int64_t src = pairing(lambda, f.generators()[source].weight);
        std::int64_t dst = pairing(lambda, f.generators()[target].weight);
        if (src >= w && dst < w && !element.is_zero())
            throw input_error("internal: baric truncation found a level-raising entry");
    }
    return BaricPieces{span_of(f, high), span_of(f, low)};
}

KoszulSystemLevel koszul_system(const StackModel& m, const Stratum& s, int n) {
    if (n < 1) throw input_error("Koszul system level must be positive");
    const KoszulCdga& alg = m.algebra();
    const std::vector<std::size_t> killed = killed_even_indices(s);
    if (killed.size() > 16)
        throw input_error("Koszul system limited to 16 killed coordinates, stratum kills " +
                          std::to_string(killed.size()));

    const std::size_t r = m.rank();
    const std::size_t count = killed.size();
    const std::uint32_t masks = std::uint32_t(1) << count;

    std::vector<ComplexGen> gens;
    gens.reserve(masks);
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
        std::string name = "g{";
        Weight w = Weight::zero(r);
        for (std::size_t t = 0; t < count; ++t) {
            if (!(mask & (std::uint32_t(1) << t))) continue;
            if (name.back() != '{') name += ",";
            name += alg.evens()[killed[t]].name;
            for (std::size_t j = 0; j < r; ++j)
                w.v[j] -= std::int64_t(n) * alg.evens()[killed[t]].weight.v[j];
        }
        name += "}";
        gens.push_back({std::move(name), -int(std::popcount(mask)), std::move(w)});
    }

    FreeComplex::EntryMap entries;
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
        for (std::size_t t = 0; t < count; ++t) {
            const std::uint32_t bit = std::uint32_t(1) << t;
            if (mask & bit) continue;
            bool negative = std::popcount(mask & (bit - 1)) % 2 != 0;
            CdgaElement power(alg.n_even(), alg.n_odd());
            MultiPoly::Exponents exps(alg.n_even(), 0);
            exps[killed[t]] = n;
            power.add_term(exps, 0, negative ? Rat(-1) : Rat(1));
            entries.emplace(FreeComplex::EntryKey{mask | bit, mask}, std::move(power));
        }
    }

    std::vector<CdgaElement> transition;
    transition.reserve(masks);
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
        CdgaElement product(alg.n_even(), alg.n_odd());
        MultiPoly::Exponents exps(alg.n_even(), 0);
        for (std::size_t t = 0; t < count; ++t)
            if (mask & (std::uint32_t(1) << t)) exps[killed[t]] = 1;
        product.add_term(exps, 0, 1);
        transition.push_back(std::move(product));
    }

    return KoszulSystemLevel{n, FreeComplex(m.algebra_ptr(), std::move(gens), std::move(entries)),
                             std::move(transition)};
}

WindowPieces gamma_window(const StackModel& m, const Stratum& s, const FreeComplex& f,
                          std::int64_t w, int max_level) {
    const std::vector<std::size_t> killed = killed_even_indices(s);
    if (max_level <= 0) {
        if (killed.empty() || f.generators().empty()) {
            max_level = 2;
        } else {
            std::int64_t min_killed = 0;
            for (std::size_t i : killed) {
                std::int64_t lvl = pairing(s.lambda, m.algebra().evens()[i].weight);
                if (min_killed == 0 || lvl < min_killed) min_killed = lvl;
            }
            std::int64_t lo = w, hi = w;
            for (const auto& gen : f.generators()) {
                std::int64_t lvl = pairing(s.lambda, gen.weight);
                lo = std::min(lo, lvl);
                hi = std::max(hi, lvl);
            }
            // A level-n subset generator sits at or below -n times the
            // minimal killed level; once that clears the generator range
            // on both sides the truncations are stationary.
            max_level = int(3 + (hi - lo) / min_killed);
        }
    }

    std::optional<BaricPieces> prev;
    for (int n = 1; n <= max_level; ++n) {
        FreeComplex kn = koszul_system(m, s, n).complex;
        FreeComplex geq =
            baric_truncate(restrict_to_stratum(s, complex_tensor(kn, f)), s.lambda, w).geq;
        FreeComplex lt =
            baric_truncate(restrict_to_stratum(s, complex_tensor(complex_dual(kn), f)), s.lambda, w)
                .lt;
        if (prev && same_presentation(prev->geq, geq) && same_presentation(prev->lt, lt))
            return WindowPieces{std::move(prev->geq), std::move(prev->lt), n - 1};
        prev = BaricPieces{std::move(geq), std::move(lt)};
    }
    throw truncation_error("window truncation did not stabilize within " +
                           std::to_string(max_level) + " Koszul levels");
}

SemiorthogonalityCertificate semiorthogonality_certificate(const FreeComplex& f,
                                                           const FreeComplex& g,
                                                           int degree_bound) {
    HomologyResult evidence = weight0_truncated_homology(complex_hom(f, g), degree_bound);
    using Status = SemiorthogonalityCertificate::Status;
    Status status;
    if (!evidence.stabilized)
        status = Status::inconclusive;
    else if (std::all_of(evidence.dims.begin(), evidence.dims.end(),
                         [](std::size_t d) { return d == 0; }))
        status = Status::certified;
    else
        status = Status::failed;
    return SemiorthogonalityCertificate{status, std::move(evidence)};
}

SerreWindowData serre_window_data(const StackModel&, const Stratum& s) {
    std::int64_t a = 0;
    for (const auto& ev : s.stratum_algebra->evens()) a += pairing(s.lambda, ev.weight);
    for (const auto& od : s.stratum_algebra->odds()) a -= pairing(s.lambda, od.weight);
    return SerreWindowData{a};
}

WallCrossingReport wall_crossing_report(const StackModel& m, const Cocharacter& lambda_plus) {
    if (lambda_plus.is_zero()) throw input_error("wall crossing requires a nonzero cocharacter");

    WallCrossingReport rep{};
    for (const auto& od : m.algebra().odds()) {
        std::int64_t lvl = pairing(lambda_plus, od.weight);
        if (lvl != 0)
            rep.violations.push_back("relation '" + od.name + "' has lambda-weight " +
                                     std::to_string(lvl) +
                                     "; the degree-one cotangent part must have weight zero");
    }
    rep.hypothesis_ok = rep.violations.empty();

    const CotangentData cot = m.cotangent();
    rep.c = pairing(lambda_plus, cot.det_weight);

    Cocharacter lambda_minus = lambda_plus;
    for (auto& c : lambda_minus.v) c = -c;
    Stratum plus = stratum_from_cocharacter(m, lambda_plus);
    Stratum minus = stratum_from_cocharacter(m, lambda_minus);
    rep.a_plus = serre_window_data(m, plus).a;
    rep.a_minus = serre_window_data(m, minus).a;

    if (rep.hypothesis_ok)
        rep.relation = rep.c == 0 ? "equivalence"
                                  : (rep.c > 0 ? "plus_embeds_into_minus" : "minus_embeds_into_plus");
    return rep;
}

namespace {

// Extracts probe coefficients, deepening the construction cutoff until
// every probe lies inside the guaranteed range of the series.
template <typename Build>
std::map<Weight, Int> probe_values(const Build& build, const Cocharacter& eta,
                                   const std::vector<Weight>& probes) {
    std::int64_t need = 0;
    for (const auto& w : probes) need = std::min(need, pairing(eta, w));
    for (std::int64_t depth = 64;; depth *= 4) {
        TruncatedSeries series = build(need - depth);
        try {
            std::map<Weight, Int> values;
            for (const auto& w : probes) values[w] = coefficient_at(series, w);
            return values;
        } catch (const truncation_error&) {
            if (depth > (std::int64_t(1) << 24))
                throw truncation_error("character identity probes exceed any manageable cutoff");
        }
    }
}

void compare_probes(CharacterIdentityCheck& check) {
    for (const auto& [w, lhs] : check.lhs) {
        const Int& rhs = check.rhs.at(w);
        if (lhs != rhs) {
            std::ostringstream msg;
            msg << "weight " << to_string(w) << ": " << lhs.get_str() << " vs " << rhs.get_str();
            check.mismatches.push_back(msg.str());
        }
    }
    check.ok = check.mismatches.empty();
}

} // namespace

CharacterIdentityCheck koszul_colimit_character_check(const StackModel& m, const Stratum& s,
                                                      const std::vector<Weight>& probes) {
    if (probes.empty()) throw input_error("character identity check needs at least one probe");
    const KoszulCdga& alg = m.algebra();
    const std::size_t r = m.rank();

    std::vector<Weight> even_weights;
    for (const auto& ev : alg.evens()) even_weights.push_back(ev.weight);
    auto eta_chains = strictly_negative_functional(r, even_weights);
    if (!eta_chains)
        throw inapplicable_error("model chain weight spaces are not finite-dimensional: no "
                                 "functional is strictly negative on every even variable");

    std::vector<Weight> rhs_constraints;
    for (const auto& ev : s.stratum_algebra->evens()) rhs_constraints.push_back(ev.weight);
    BigradedCharacter sym_gens(r), conormal(r);
    for (std::size_t i = 0; i < alg.n_even(); ++i) {
        if (!s.killed_even[i]) continue;
        rhs_constraints.push_back(-alg.evens()[i].weight);
        sym_gens.add_term(-alg.evens()[i].weight, 0, 1);
        conormal.add_term(alg.evens()[i].weight, 1, 1);
    }
    for (std::size_t j = 0; j < alg.n_odd(); ++j) {
        if (!s.killed_odd[j]) continue;
        rhs_constraints.push_back(-alg.odds()[j].weight);
        sym_gens.add_term(-alg.odds()[j].weight, -1, 1);
        conormal.add_term(alg.odds()[j].weight, 2, 1);
    }
    auto eta_rhs = strictly_negative_functional(r, rhs_constraints);
    if (!eta_rhs)
        throw inapplicable_error("normal-cone filtration character is not levelwise finite: no "
                                 "functional is strictly negative on the stratum evens and the "
                                 "dual conormal generators");

    CharacterIdentityCheck check{};
    DetRank twist = det_and_rank(conormal);
    BigradedCharacter dualizing = BigradedCharacter::single(twist.weight, int(twist.rank));
    check.rhs = probe_values(
        [&](std::int64_t cut) {
            TruncatedSeries product = series_mul(
                series_mul(sym_gens.is_zero() ? TruncatedSeries::unit(*eta_rhs, cut)
                                              : sym_series(sym_gens, *eta_rhs, cut),
                           chain_character(*s.stratum_algebra, *eta_rhs, cut)),
                dualizing);
            return euler_specialize(product);
        },
        *eta_rhs, probes);

    const std::vector<std::size_t> killed = killed_even_indices(s);
    std::int64_t beta = 0;
    for (std::size_t i : killed) beta -= pairing(*eta_chains, alg.evens()[i].weight);

    std::map<Weight, Int> prev;
    const int max_n = 128;
    for (int n = 1; n <= max_n; ++n) {
        BigradedCharacter kchar(r);
        for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << killed.size()); ++mask) {
            Weight w = Weight::zero(r);
            for (std::size_t t = 0; t < killed.size(); ++t)
                if (mask & (std::uint32_t(1) << t))
                    for (std::size_t j = 0; j < r; ++j)
                        w.v[j] -= std::int64_t(n) * alg.evens()[killed[t]].weight.v[j];
            kchar.add_term(w, -int(std::popcount(mask)), 1);
        }
        std::map<Weight, Int> values = probe_values(
            [&](std::int64_t cut) {
                return euler_specialize(
                    series_mul(chain_character(alg, *eta_chains, cut - n * beta), kchar));
            },
            *eta_chains, probes);
        if (n >= 2 && values == prev) {
            check.stabilized_at = n - 1;
            check.lhs = std::move(values);
            compare_probes(check);
            return check;
        }
        prev = std::move(values);
    }
    throw truncation_error("Koszul colimit character did not stabilize within " +
                           std::to_string(max_n) + " levels");
}

CharacterIdentityCheck pushforward_filtration_character_check(const StackModel& m,
                                                              const Stratum& s,
                                                              const std::vector<Weight>& probes) {
    if (probes.empty()) throw input_error("character identity check needs at least one probe");
    const std::size_t r = m.rank();

    std::vector<Weight> constraints;
    for (const auto& ev : s.stratum_algebra->evens()) constraints.push_back(ev.weight);
    for (const auto& [key, coeff] : s.cotangent_negative.terms())
        if (key.degree % 2 != 0) constraints.push_back(key.w);
    auto eta = strictly_negative_functional(r, constraints);
    if (!eta)
        throw inapplicable_error("pushforward filtration character is not levelwise finite: no "
                                 "functional is strictly negative on the stratum evens and the "
                                 "odd negative cotangent generators");

    CharacterIdentityCheck check{};
    check.stabilized_at = 0;
    check.lhs = probe_values(
        [&](std::int64_t cut) {
            return euler_specialize(chain_character(*s.stratum_algebra, *eta, cut));
        },
        *eta, probes);
    check.rhs = probe_values(
        [&](std::int64_t cut) {
            TruncatedSeries sym = s.cotangent_negative.is_zero()
                                      ? TruncatedSeries::unit(*eta, cut)
                                      : sym_series(s.cotangent_negative, *eta, cut);
            return euler_specialize(series_mul(sym, chain_character(*s.fixed_algebra, *eta, cut)));
        },
        *eta, probes);
    compare_probes(check);
    return check;
}

} // namespace stratloc
