#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stratloc/homology.hpp"
#include "stratloc/strat.hpp"

namespace stratloc {

/// K-theoretic reciprocal Euler class of a stratum:
/// Sym(L^- + dual(L^+)) twisted by det(L^+)^dual and shifted by
/// -rank(L^+).  The twist and shift are folded into `series` (so the
/// series is the class itself) and recorded separately for reporting.
struct EClass {
    TruncatedSeries series; // reference cocharacter = the stratum's lambda
    Weight det_dual_weight;
    std::int64_t rank_shift = 0;
};

/// Requires cutoff <= 0.  Sym converges because every generator of
/// L^- and of dual(L^+) sits at a strictly negative lambda-level.
EClass e_class(const StackModel& m, const Stratum& s, std::int64_t cutoff);

/// Euler characteristic of invariant global sections through the
/// character series backend: the lattice-0 coefficient of the
/// Euler-specialized product char(chains) * char(generators of f).
/// Needs a grading cocharacter placing every even coordinate at level
/// <= -1 (finite weight spaces); otherwise throws inapplicable_error.
Int chi_series(const StackModel& m, const FreeComplex& f);

struct ChiChains {
    Int value;
    bool stabilized = false;
};

/// Same quantity through degree-truncated weight-0 homology over the
/// model algebra.  Applicable to any finite-rank complex; `stabilized`
/// records agreement between consecutive truncation bounds.
ChiChains chi_chains(const StackModel& m, const FreeComplex& f, int degree_bound);

struct StratumCorrection {
    Int value;
    std::string method; // "fixed-series" or "fixed-homology"
};

/// Correction term chi(Z, F|_Z (x) E) of one stratum.  Uses the series
/// coefficient route when the fixed algebra's even generators admit a
/// strictly negative grading cocharacter (finite lattice-weight spaces);
/// otherwise falls back to weight-0 truncated homology over the fixed
/// algebra of the restricted complex tensored with a truncation of E.
/// `cutoff` (<= 0) deepens the E-class beyond the auto-derived level.
StratumCorrection chi_fixed_term(const StackModel& m, const Stratum& s, const FreeComplex& f,
                                 std::int64_t cutoff = 0, int degree_bound = 16);
Int chi_fixed(const StackModel& m, const Stratum& s, const FreeComplex& f,
              std::int64_t cutoff = 0, int degree_bound = 16);

/// Euler characteristic over the semistable locus, by an independent
/// backend only: 0 when the locus is empty (some stratum kills no even
/// coordinate), or weight-0 homology over the localized chart when
/// exactly one even coordinate is killed across all strata (the chart
/// adjoins an inverse x' and an odd witness v with dv = x x' - 1).
/// Anything else is reported unavailable, never guessed.
struct SemistableChi {
    std::optional<Int> value;
    std::string method; // "empty-locus", "inverted-chart", "unavailable"
};

SemistableChi chi_semistable(const StackModel& m, const std::vector<Stratum>& strata,
                             const FreeComplex& f, int degree_bound = 16);

struct LocalizationTerm {
    std::optional<Int> value;
    std::string method = "unavailable";
};

/// chi(X, F) = chi(X^ss, F) + sum over strata of chi(Z, F|_Z (x) E),
/// every term from an independent backend with provenance recorded.
struct LocalizationReport {
    enum class Verdict { verified, mismatch, indeterminate };

    LocalizationTerm lhs;
    LocalizationTerm semistable;
    std::vector<LocalizationTerm> corrections; // stratification order
    Verdict verdict = Verdict::indeterminate;

    /// ss + corrections when all of them are available.
    std::optional<Int> rhs() const;
};

LocalizationReport verify_localization(const StackModel& m, const FreeComplex& f,
                                       std::int64_t cutoff = 0, int degree_bound = 16);

} // namespace stratloc
