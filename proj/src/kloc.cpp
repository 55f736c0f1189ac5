#include "stratloc/kloc.hpp"

#include <algorithm>
#include <memory>
#include <utility>

#include "stratloc/cone.hpp"
#include "stratloc/error.hpp"
#include "stratloc/parallel.hpp"

namespace stratloc {

namespace {

std::optional<Cocharacter> even_grading_cocharacter(std::size_t rank, const KoszulCdga& algebra) {
    std::vector<Weight> weights;
    for (const auto& ev : algebra.evens()) weights.push_back(ev.weight);
    return strictly_negative_functional(rank, weights);
}

MultiPoly widen_poly(const MultiPoly& p, std::size_t extra) {
    MultiPoly out(p.nvars() + extra);
    for (const auto& [e, c] : p.terms()) {
        MultiPoly::Exponents widened = e;
        widened.resize(e.size() + extra, 0);
        out.add_term(widened, c);
    }
    return out;
}

CdgaElement widen_element(const CdgaElement& a, std::size_t extra_even, std::size_t extra_odd) {
    CdgaElement out(a.n_even() + extra_even, a.n_odd() + extra_odd);
    for (const auto& [key, c] : a.terms()) {
        MultiPoly::Exponents widened = key.first;
        widened.resize(widened.size() + extra_even, 0);
        out.add_term(widened, key.second, c);
    }
    return out;
}

std::int64_t small(const Int& c, const char* what) {
    if (!c.fits_slong_p()) throw input_error(std::string("coefficient out of range in ") + what);
    return c.get_si();
}

} // namespace

EClass e_class(const StackModel& m, const Stratum& s, std::int64_t cutoff) {
    if (cutoff > 0) throw input_error("e_class cutoff must be <= 0");

    BigradedCharacter gens = s.cotangent_negative;
    for (const auto& [k, c] : s.cotangent_positive.terms()) {
        Weight w = k.w;
        for (auto& entry : w.v) entry = -entry;
        gens.add_term(w, -k.degree, c);
    }

    DetRank plus = det_and_rank(s.cotangent_positive);
    Weight det_dual = plus.weight;
    for (auto& entry : det_dual.v) entry = -entry;

    TruncatedSeries sym = gens.is_zero() ? TruncatedSeries::unit(s.lambda, cutoff)
                                         : sym_series(gens, s.lambda, cutoff);
    BigradedCharacter twist(m.rank());
    twist.add_term(det_dual, -plus.rank, 1);
    return EClass{series_mul(sym, twist), det_dual, -plus.rank};
}

Int chi_series(const StackModel& m, const FreeComplex& f) {
    auto eta = even_grading_cocharacter(m.rank(), m.algebra());
    if (!eta)
        throw inapplicable_error(
            "series oracle inapplicable: no grading cocharacter places every even coordinate at "
            "level <= -1");
    if (f.generators().empty()) return 0;

    const BigradedCharacter gens = f.generator_character();
    std::int64_t top = std::max<std::int64_t>(0, max_level(gens, *eta).value_or(0));
    TruncatedSeries chains = chain_character(m.algebra(), *eta, -(top + 1));
    return coefficient_at(euler_specialize(series_mul(chains, gens)), Weight::zero(m.rank()));
}

ChiChains chi_chains(const StackModel&, const FreeComplex& f, int degree_bound) {
    HomologyResult h = weight0_truncated_homology(f, degree_bound);
    return ChiChains{h.euler(), h.stabilized};
}

StratumCorrection chi_fixed_term(const StackModel& m, const Stratum& s, const FreeComplex& f,
                                 std::int64_t cutoff, int degree_bound) {
    if (cutoff > 0) throw input_error("chi_fixed cutoff must be <= 0");
    FreeComplex restricted = restrict_to_fixed(s, restrict_to_stratum(s, f));
    if (restricted.generators().empty()) return StratumCorrection{0, "fixed-series"};

    const BigradedCharacter fchar = restricted.generator_character();
    // Fixed-algebra chains all sit at lambda-level 0, so only the
    // level-0 part of E * char(F|_Z) can meet lattice weight 0; the
    // E-class is needed down to minus the restricted top level only.
    std::int64_t top = max_level(fchar, s.lambda).value_or(0);
    std::int64_t effective = std::min({cutoff, -top - 1, std::int64_t{0}});
    EClass e = e_class(m, s, effective);
    const KoszulCdga& fixed = *s.fixed_algebra;

    auto eta = even_grading_cocharacter(m.rank(), fixed);
    if (eta) {
        TruncatedSeries partner = euler_specialize(series_mul(e.series, fchar));
        std::int64_t need = 0;
        for (const auto& [k, c] : partner.terms()) {
            if (pairing(s.lambda, k.w) != 0 || c == 0) continue;
            Weight w = k.w;
            for (auto& entry : w.v) entry = -entry;
            need = std::min(need, pairing(*eta, w));
        }
        TruncatedSeries bchains = euler_specialize(chain_character(fixed, *eta, need - 1));
        Int total = 0;
        for (const auto& [k, c] : partner.terms()) {
            if (pairing(s.lambda, k.w) != 0 || c == 0) continue;
            Weight w = k.w;
            for (auto& entry : w.v) entry = -entry;
            total += c * coefficient_at(bchains, w);
        }
        return StratumCorrection{total, "fixed-series"};
    }

    // Fallback: formal direct sum of free generators realizing the
    // E-class truncation, tensored with F|_Z, weight-0 homology over B.
    std::vector<ComplexGen> egens;
    for (const auto& [k, c] : e.series.terms()) {
        std::int64_t copies = small(c, "E-class truncation");
        if (copies < 0) throw input_error("E-class truncation has a negative multiplicity");
        for (std::int64_t i = 0; i < copies; ++i)
            egens.push_back(ComplexGen{"E" + std::to_string(egens.size()), k.degree, k.w});
    }
    FreeComplex formal(s.fixed_algebra, std::move(egens), {});
    HomologyResult h = weight0_truncated_homology(complex_tensor(restricted, formal), degree_bound);
    if (!h.stabilized)
        throw truncation_error("fixed-point homology fallback did not stabilize within the "
                               "degree bound");
    return StratumCorrection{h.euler(), "fixed-homology"};
}

Int chi_fixed(const StackModel& m, const Stratum& s, const FreeComplex& f, std::int64_t cutoff,
              int degree_bound) {
    return chi_fixed_term(m, s, f, cutoff, degree_bound).value;
}

SemistableChi chi_semistable(const StackModel& m, const std::vector<Stratum>& strata,
                             const FreeComplex& f, int degree_bound) {
    // A stratum killing no even coordinate covers the whole space.
    for (const auto& s : strata) {
        bool kills_even = std::find(s.killed_even.begin(), s.killed_even.end(), true) !=
                          s.killed_even.end();
        if (!kills_even) return SemistableChi{Int(0), "empty-locus"};
    }
    std::vector<bool> killed(m.coordinates().size(), false);
    for (const auto& s : strata)
        for (std::size_t i = 0; i < killed.size(); ++i)
            if (s.killed_even[i]) killed[i] = true;
    std::size_t count = 0, chart = 0;
    for (std::size_t i = 0; i < killed.size(); ++i)
        if (killed[i]) {
            ++count;
            chart = i;
        }
    if (count != 1) return SemistableChi{std::nullopt, "unavailable"};

    // Localized chart: adjoin x' of the opposite weight and an odd
    // witness v with dv = x x' - 1.
    const KoszulCdga& algebra = m.algebra();
    std::vector<EvenVar> evens = algebra.evens();
    Weight inverse_weight = evens[chart].weight;
    for (auto& entry : inverse_weight.v) entry = -entry;
    evens.push_back(EvenVar{evens[chart].name + "_inv", inverse_weight});

    std::vector<OddVar> odds;
    for (const auto& o : algebra.odds())
        odds.push_back(OddVar{o.name, o.weight, widen_poly(o.differential, 1)});
    MultiPoly relation(algebra.n_even() + 1);
    MultiPoly::Exponents cross(algebra.n_even() + 1, 0);
    cross[chart] = 1;
    cross[algebra.n_even()] = 1;
    relation.add_term(cross, 1);
    relation.add_term(MultiPoly::Exponents(algebra.n_even() + 1, 0), -1);
    odds.push_back(OddVar{"inv_" + evens[chart].name, Weight::zero(m.rank()), relation});

    auto localized = std::make_shared<const KoszulCdga>(m.rank(), std::move(evens),
                                                        std::move(odds));
    FreeComplex::EntryMap entries;
    for (const auto& [key, element] : f.entries())
        entries.emplace(key, widen_element(element, 1, 1));
    FreeComplex on_chart(localized, f.generators(), std::move(entries));

    HomologyResult h = weight0_truncated_homology(on_chart, degree_bound);
    if (!h.stabilized) return SemistableChi{std::nullopt, "unavailable"};
    return SemistableChi{h.euler(), "inverted-chart"};
}

std::optional<Int> LocalizationReport::rhs() const {
    if (!semistable.value) return std::nullopt;
    Int total = *semistable.value;
    for (const auto& c : corrections) {
        if (!c.value) return std::nullopt;
        total += *c.value;
    }
    return total;
}

LocalizationReport verify_localization(const StackModel& m, const FreeComplex& f,
                                       std::int64_t cutoff, int degree_bound) {
    LocalizationReport report;
    std::vector<Stratum> strata = git_stratify(m);

    try {
        report.lhs = LocalizationTerm{chi_series(m, f), "series"};
    } catch (const inapplicable_error&) {
        ChiChains chains = chi_chains(m, f, degree_bound);
        if (chains.stabilized)
            report.lhs = LocalizationTerm{chains.value, "chains"};
        else
            report.lhs = LocalizationTerm{std::nullopt, "unavailable"};
    }

    SemistableChi ss = chi_semistable(m, strata, f, degree_bound);
    report.semistable = LocalizationTerm{ss.value, ss.method};

    report.corrections.assign(strata.size(), LocalizationTerm{});
    parallel_for(strata.size(), [&](std::size_t i) {
        try {
            StratumCorrection t = chi_fixed_term(m, strata[i], f, cutoff, degree_bound);
            report.corrections[i] = LocalizationTerm{t.value, t.method};
        } catch (const error&) {
            report.corrections[i] = LocalizationTerm{std::nullopt, "unavailable"};
        }
    });

    std::optional<Int> rhs = report.rhs();
    if (report.lhs.value && rhs)
        report.verdict = (*report.lhs.value == *rhs) ? LocalizationReport::Verdict::verified
                                                     : LocalizationReport::Verdict::mismatch;
    else
        report.verdict = LocalizationReport::Verdict::indeterminate;
    return report;
}

} // namespace stratloc
