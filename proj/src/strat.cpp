#include "stratloc/strat.hpp"

#include <algorithm>
#include <map>

#include "stratloc/parallel.hpp"

namespace stratloc {

namespace {

RatVec negated_ratvec(const Weight& w) {
    RatVec v;
    v.reserve(w.v.size());
    for (auto c : w.v) v.emplace_back(-c);
    return v;
}

bool is_zero_vec(const RatVec& v) {
    for (const auto& c : v)
        if (c != 0) return false;
    return true;
}

Rat instability_value(const Weight& linearization, const Cocharacter& lambda) {
    Int num = 0, den = 0;
    for (std::size_t i = 0; i < lambda.v.size(); ++i) {
        num += Int(lambda.v[i]) * Int(linearization.v[i]);
        den += Int(lambda.v[i]) * Int(lambda.v[i]);
    }
    return Rat(num * num) / Rat(den);
}

std::string support_name(const StackModel& m, std::uint32_t mask) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < m.coordinates().size(); ++i) {
        if (!(mask & (std::uint32_t(1) << i))) continue;
        if (!first) out += ",";
        out += m.coordinates()[i].name;
        first = false;
    }
    return out + "}";
}

} // namespace

std::optional<Destabilizer> optimal_destabilizer(const StackModel& m,
                                                 const std::vector<bool>& support) {
    if (support.size() != m.coordinates().size())
        throw input_error("support mask has wrong length");
    std::vector<Weight> weights;
    for (std::size_t i = 0; i < support.size(); ++i)
        if (support[i]) weights.push_back(m.coordinates()[i].action_weight);

    const bool semistable = in_cone(weights, m.linearization());
    RatVec q = project_to_cone(weights, negated_ratvec(m.linearization()));
    if (semistable != is_zero_vec(q))
        throw error("internal: cone membership and projection disagree on semistability");
    if (semistable) return std::nullopt;

    Destabilizer d{integral_direction(q), Rat(0)};
    d.mu_squared = instability_value(m.linearization(), d.lambda);
    Int along = 0;
    for (std::size_t i = 0; i < d.lambda.v.size(); ++i)
        along += Int(d.lambda.v[i]) * Int(m.linearization().v[i]);
    if (along >= 0) throw error("internal: destabilizer does not lower the linearization");
    return d;
}

Stratum stratum_from_cocharacter(const StackModel& m, const Cocharacter& lambda) {
    if (lambda.rank() != m.rank()) throw input_error("cocharacter has wrong rank");
    if (lambda.is_zero()) throw input_error("cocharacter must be nonzero");
    const KoszulCdga& alg = m.algebra();

    Stratum s{lambda,
              instability_value(m.linearization(), lambda),
              {},
              std::vector<bool>(alg.n_even(), false),
              std::vector<bool>(alg.n_odd(), false),
              nullptr,
              {},
              {},
              nullptr,
              BigradedCharacter(m.rank()),
              BigradedCharacter(m.rank()),
              true,
              true,
              true};

    for (std::size_t i = 0; i < alg.n_even(); ++i)
        s.killed_even[i] = pairing(lambda, alg.evens()[i].weight) >= 1;
    for (std::size_t j = 0; j < alg.n_odd(); ++j)
        s.killed_odd[j] = pairing(lambda, alg.odds()[j].weight) >= 1;

    std::vector<EvenVar> kept_even;
    for (std::size_t i = 0; i < alg.n_even(); ++i)
        if (!s.killed_even[i]) kept_even.push_back(alg.evens()[i]);
    std::vector<OddVar> kept_odd;
    for (std::size_t j = 0; j < alg.n_odd(); ++j)
        if (!s.killed_odd[j])
            kept_odd.push_back({alg.odds()[j].name, alg.odds()[j].weight,
                                poly_kill_variables(alg.odds()[j].differential, s.killed_even)});
    s.stratum_algebra =
        std::make_shared<const KoszulCdga>(m.rank(), std::move(kept_even), std::move(kept_odd));

    const KoszulCdga& strat_alg = *s.stratum_algebra;
    s.fixed_even.assign(strat_alg.n_even(), false);
    s.fixed_odd.assign(strat_alg.n_odd(), false);
    for (std::size_t i = 0; i < strat_alg.n_even(); ++i)
        s.fixed_even[i] = pairing(lambda, strat_alg.evens()[i].weight) <= -1;
    for (std::size_t j = 0; j < strat_alg.n_odd(); ++j)
        s.fixed_odd[j] = pairing(lambda, strat_alg.odds()[j].weight) <= -1;
    std::vector<EvenVar> fixed_even;
    for (std::size_t i = 0; i < strat_alg.n_even(); ++i)
        if (!s.fixed_even[i]) fixed_even.push_back(strat_alg.evens()[i]);
    std::vector<OddVar> fixed_odd;
    for (std::size_t j = 0; j < strat_alg.n_odd(); ++j)
        if (!s.fixed_odd[j])
            fixed_odd.push_back({strat_alg.odds()[j].name, strat_alg.odds()[j].weight,
                                 poly_kill_variables(strat_alg.odds()[j].differential,
                                                     s.fixed_even)});
    s.fixed_algebra =
        std::make_shared<const KoszulCdga>(m.rank(), std::move(fixed_even), std::move(fixed_odd));

    const CotangentData cot = m.cotangent();
    for (const auto& [key, mult] : cot.character.terms()) {
        const std::int64_t level = pairing(lambda, key.w);
        if (level >= 1) s.cotangent_positive.add_term(key.w, key.degree, mult);
        if (level <= -1) s.cotangent_negative.add_term(key.w, key.degree, mult);
    }

    for (std::size_t j = 0; j < alg.n_odd(); ++j)
        if (s.killed_odd[j]) s.regular_embedding = false;
    for (std::size_t j = 0; j < strat_alg.n_odd(); ++j)
        if (pairing(lambda, strat_alg.odds()[j].weight) != 0) s.affine_bundle_over_fixed = false;
    for (const auto& [key, mult] : s.cotangent_negative.terms())
        if (key.degree == 1) s.window_ready = false;

    return s;
}

std::vector<Stratum> git_stratify(const StackModel& m) {
    const std::size_t n = m.coordinates().size();
    if (n > 20) throw input_error("support enumeration is limited to 20 coordinates");
    const std::size_t total = std::size_t(1) << n;
    std::vector<std::optional<Destabilizer>> found(total);
    parallel_for(total, [&](std::size_t mask) {
        std::vector<bool> support(n, false);
        for (std::size_t i = 0; i < n; ++i) support[i] = (mask >> i) & 1;
        found[mask] = optimal_destabilizer(m, support);
    });

    std::map<std::vector<std::int64_t>, std::vector<std::uint32_t>> groups;
    for (std::size_t mask = 0; mask < total; ++mask)
        if (found[mask])
            groups[found[mask]->lambda.v].push_back(static_cast<std::uint32_t>(mask));

    std::vector<Stratum> strata;
    strata.reserve(groups.size());
    for (auto& [lv, masks] : groups) {
        Stratum s = stratum_from_cocharacter(m, Cocharacter{lv});
        for (auto mask : masks) {
            if (!(found[mask]->mu_squared == s.mu_squared))
                throw error("internal: instability value disagrees within a stratum");
        }
        s.supports = std::move(masks);
        strata.push_back(std::move(s));
    }
    std::sort(strata.begin(), strata.end(), [](const Stratum& a, const Stratum& b) {
        if (a.mu_squared != b.mu_squared) return a.mu_squared > b.mu_squared;
        return a.lambda.v < b.lambda.v;
    });
    return strata;
}

StratificationCheck validate_stratification(const StackModel& m) {
    const std::size_t n = m.coordinates().size();
    if (n > 20) throw input_error("support enumeration is limited to 20 coordinates");
    const std::size_t total = std::size_t(1) << n;
    std::vector<Rat> value(total, Rat(0));
    parallel_for(total, [&](std::size_t mask) {
        std::vector<bool> support(n, false);
        for (std::size_t i = 0; i < n; ++i) support[i] = (mask >> i) & 1;
        auto d = optimal_destabilizer(m, support);
        value[mask] = d ? d->mu_squared : Rat(0);
    });

    StratificationCheck check{true, {}};
    for (std::size_t mask = 0; mask < total; ++mask) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!((mask >> i) & 1)) continue;
            const std::size_t smaller = mask & ~(std::size_t(1) << i);
            if (value[smaller] < value[mask]) {
                check.ok = false;
                check.violations.push_back(
                    "closing " + support_name(m, static_cast<std::uint32_t>(mask)) + " to " +
                    support_name(m, static_cast<std::uint32_t>(smaller)) +
                    " lowers the instability value");
            }
        }
    }
    return check;
}

FreeComplex restrict_to_stratum(const Stratum& s, const FreeComplex& f) {
    return complex_restrict(f, s.stratum_algebra, s.killed_even, s.killed_odd);
}

FreeComplex restrict_to_fixed(const Stratum& s, const FreeComplex& f) {
    return complex_restrict(f, s.fixed_algebra, s.fixed_even, s.fixed_odd);
}

} // namespace stratloc
