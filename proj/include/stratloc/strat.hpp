#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stratloc/complex.hpp"
#include "stratloc/cone.hpp"
#include "stratloc/stack.hpp"

namespace stratloc {

/// Primitive destabilizing one-parameter subgroup with its instability
/// value.  mu itself can be irrational at rank >= 2, so the square is the
/// stored exact invariant.
struct Destabilizer {
    Cocharacter lambda;
    Rat mu_squared;
};

/// Optimal destabilizer of the locus of points with the given coordinate
/// support: the cocharacter maximizing -<l, lambda>/|lambda| over the
/// cone of one-parameter subgroups under which the support flows to a
/// limit.  nullopt when the locus is semistable (the linearization lies
/// in the cone of the supported action weights).
std::optional<Destabilizer> optimal_destabilizer(const StackModel& m,
                                                 const std::vector<bool>& support);

/// One unstable stratum: the destabilizer, the derived presentation of
/// the stratum and its fixed locus, and the cotangent pieces graded by
/// the sign of the lambda-pairing.
struct Stratum {
    Cocharacter lambda;
    Rat mu_squared;
    std::vector<std::uint32_t> supports; // coordinate bitmasks drawn to this stratum

    // Model algebra -> stratum algebra: generators at lambda-level >= 1
    // are killed, differentials are pushed through the quotient.
    std::vector<bool> killed_even, killed_odd;
    std::shared_ptr<const KoszulCdga> stratum_algebra;

    // Stratum algebra -> fixed-locus algebra: strictly negative levels go.
    std::vector<bool> fixed_even, fixed_odd;
    std::shared_ptr<const KoszulCdga> fixed_algebra;

    BigradedCharacter cotangent_positive; // cotangent terms at level >= 1
    BigradedCharacter cotangent_negative; // cotangent terms at level <= -1

    bool regular_embedding;        // no odd generator is killed
    bool affine_bundle_over_fixed; // every kept generator off level zero is even
    bool window_ready;             // no degree-one term in the negative cotangent piece
};

/// Stratum data attached to an arbitrary nonzero cocharacter.
Stratum stratum_from_cocharacter(const StackModel& m, const Cocharacter& lambda);

/// All unstable strata of the model: supports are enumerated exactly,
/// destabilizers grouped by their primitive cocharacter, and the result
/// ordered by decreasing instability, ties broken lexicographically.
std::vector<Stratum> git_stratify(const StackModel& m);

struct StratificationCheck {
    bool ok;
    std::vector<std::string> violations;
};

/// Closure monotonicity of the instability value: dropping a coordinate
/// from a support (passing to the closure of its locus) must not lower
/// mu^2.  Violations are reported per support pair.
StratificationCheck validate_stratification(const StackModel& m);

/// Base change of a complex over the model algebra to the stratum, and
/// further to the fixed locus.
FreeComplex restrict_to_stratum(const Stratum& s, const FreeComplex& f);
FreeComplex restrict_to_fixed(const Stratum& s, const FreeComplex& f);

} // namespace stratloc
