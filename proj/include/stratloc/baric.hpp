#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stratloc/complex.hpp"
#include "stratloc/homology.hpp"
#include "stratloc/strat.hpp"

namespace stratloc {

/// Result of splitting a complex at a lambda-level threshold.
struct BaricPieces {
    FreeComplex geq; // subcomplex on generators of level >= w
    FreeComplex lt;  // quotient on generators of level < w
};

/// Splits a semifree complex over a non-positively weighted algebra into
/// the subcomplex generated in lambda-levels >= w and the complementary
/// quotient.  Every algebra generator must have level <= 0; this is what
/// makes the high-level generators span a subcomplex.
BaricPieces baric_truncate(const FreeComplex& f, const Cocharacter& lambda, std::int64_t w);

/// One level of the directed system computing sections supported on a
/// stratum.  The complex is the dual Koszul complex on the n-th powers of
/// the killed even coordinates, over the ambient model algebra, with
/// generators g_S indexed by subsets S of the killed set at homological
/// degree -|S|.  The augmentation g_{} -> 1 maps it to the unit complex.
/// transition[i] is the diagonal coefficient (the product of the killed
/// coordinates in S) of the chain map from this level to level n+1.
struct KoszulSystemLevel {
    int n;
    FreeComplex complex;
    std::vector<CdgaElement> transition;
};

/// Builds level n >= 1 of the Koszul system of a stratum.  With no killed
/// even coordinate the system is constantly the unit complex (sections
/// supported on the whole component).
KoszulSystemLevel koszul_system(const StackModel& m, const Stratum& s, int n);

/// Window truncation pieces of a complex relative to a stratum.
struct WindowPieces {
    FreeComplex geq; // stationary >=w piece of K_n (x) F on the stratum
    FreeComplex lt;  // stationary <w piece of dual(K_n) (x) F on the stratum
    int stabilized_at;
};

/// Computes the supported-sections window truncations of F at threshold w
/// by running the Koszul system until the truncated presentations are
/// stationary between consecutive levels.  max_level <= 0 selects a
/// default derived from the level spread of F and the smallest killed
/// coordinate level.  Throws truncation_error if the system fails to
/// stabilize within the bound.
WindowPieces gamma_window(const StackModel& m, const Stratum& s, const FreeComplex& f,
                          std::int64_t w, int max_level = 0);

/// Outcome of a Hom-vanishing test between two complexes, with the
/// homology dimensions retained as evidence.
struct SemiorthogonalityCertificate {
    enum class Status { certified, failed, inconclusive };
    Status status;
    HomologyResult evidence; // weight-zero homology of the Hom complex
};

/// Certifies RHom(F, G) = 0 by computing the weight-zero truncated
/// homology of the Hom complex over the ambient model algebra.  All
/// dimensions zero with a stabilized truncation certifies; a nonzero
/// dimension fails; a non-stabilized truncation is inconclusive.
SemiorthogonalityCertificate semiorthogonality_certificate(const FreeComplex& f,
                                                           const FreeComplex& g,
                                                           int degree_bound);

/// Serre-duality window data of a stratum: a is the lambda-weight of the
/// dualizing complex of the stratum restricted to the fixed locus, and
/// duality sends the window at w to the window at flip(w) = a + 1 - w.
struct SerreWindowData {
    std::int64_t a;
    std::int64_t flip(std::int64_t w) const { return a + 1 - w; }
};

SerreWindowData serre_window_data(const StackModel& m, const Stratum& s);

/// Comparison of the two sides of a variation-of-linearization wall.
struct WallCrossingReport {
    bool hypothesis_ok; // every relation has lambda-weight zero
    std::vector<std::string> violations;
    std::int64_t c;       // lambda_plus-weight of det of the cotangent character
    std::int64_t a_plus;  // dualizing weight on the lambda_plus side
    std::int64_t a_minus; // dualizing weight on the lambda_minus side
    // "equivalence" when c = 0; otherwise which side's window category
    // embeds into the other's, with the window sizes differing by |c|.
    std::string relation;
};

/// Compares the strata of lambda and -lambda: computes the determinant
/// pairing c, the dualizing weights on both sides, and the containment
/// direction of the window categories.  When some relation has nonzero
/// lambda-weight the comparison hypothesis fails and no case is emitted.
WallCrossingReport wall_crossing_report(const StackModel& m, const Cocharacter& lambda_plus);

/// Values of a per-lattice-weight character identity, probed on an
/// explicit finite set of weights.
struct CharacterIdentityCheck {
    bool ok;
    int stabilized_at; // Koszul level at which the left side became stationary
    std::map<Weight, Int> lhs, rhs;
    std::vector<std::string> mismatches;
};

/// Verifies, per probed lattice weight, that the stationary Euler
/// characteristic of the Koszul-system chains equals the normal-cone
/// filtration character: Sym of the dual shifted conormal generators
/// times the dualizing twist of the embedding times the chain character
/// of the stratum algebra.  Requires chain weight spaces of the full
/// model algebra to be finite-dimensional.
CharacterIdentityCheck koszul_colimit_character_check(const StackModel& m, const Stratum& s,
                                                      const std::vector<Weight>& probes);

/// Verifies, per probed lattice weight, that the chain character of the
/// stratum algebra equals Sym of the negative cotangent generators times
/// the chain character of the fixed-locus algebra (the pushforward
/// filtration along the projection to the fixed locus).
CharacterIdentityCheck pushforward_filtration_character_check(const StackModel& m,
                                                              const Stratum& s,
                                                              const std::vector<Weight>& probes);

} // namespace stratloc
