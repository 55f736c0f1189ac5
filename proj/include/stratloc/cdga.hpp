#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stratloc/character.hpp"
#include "stratloc/polynomial.hpp"

namespace stratloc {

struct EvenVar {
    std::string name;
    Weight weight; // representation weight

    friend bool operator==(const EvenVar&, const EvenVar&) = default;
};

/// Odd generator of homological degree 1 with differential du = f, where
/// f is a polynomial in the even variables, weight-homogeneous of the
/// generator's weight.  Only degree-1 odd generators carry chain-level
/// differentials.
struct OddVar {
    std::string name;
    Weight weight;
    MultiPoly differential;

    friend bool operator==(const OddVar&, const OddVar&) = default;
};

/// Free graded-commutative algebra k[x_1..x_n] (x) Lambda[u_1..u_m] with
/// differential d(x_i) = 0, d(u_j) = f_j.  d^2 = 0 holds structurally
/// because every f_j lives in the even subalgebra.
class KoszulCdga {
public:
    KoszulCdga(std::size_t rank, std::vector<EvenVar> evens, std::vector<OddVar> odds);

    std::size_t rank() const { return rank_; }
    std::size_t n_even() const { return even_.size(); }
    std::size_t n_odd() const { return odd_.size(); }
    const std::vector<EvenVar>& evens() const { return even_; }
    const std::vector<OddVar>& odds() const { return odd_; }

    /// Generator inventory as a character: evens at degree 0, odds at
    /// degree 1, with their representation weights.
    BigradedCharacter generator_inventory() const;

    friend bool operator==(const KoszulCdga&, const KoszulCdga&) = default;

private:
    std::size_t rank_;
    std::vector<EvenVar> even_;
    std::vector<OddVar> odd_;
};

/// Element of a Koszul CDGA: finite sum of (even polynomial) * (square
/// free odd monomial), the odd factor stored as an index bitmask in
/// ascending order with Koszul signs folded into the coefficient.
class CdgaElement {
public:
    using OddMask = std::uint32_t;
    using Key = std::pair<MultiPoly::Exponents, OddMask>;

    CdgaElement(std::size_t n_even, std::size_t n_odd) : n_even_(n_even), n_odd_(n_odd) {
        if (n_odd_ > 32) throw input_error("more than 32 odd generators are not supported");
    }

    static CdgaElement from_poly(const MultiPoly& p, std::size_t n_odd);
    static CdgaElement odd_variable(std::size_t n_even, std::size_t n_odd, std::size_t j);

    std::size_t n_even() const { return n_even_; }
    std::size_t n_odd() const { return n_odd_; }
    const std::map<Key, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const MultiPoly::Exponents& e, OddMask m, const Rat& c);

    /// Maximal total polynomial degree (even exponents plus odd factors).
    int total_degree() const;

    /// Homological degree when all terms agree (= popcount of the odd
    /// mask); nullopt for inhomogeneous or zero elements.
    std::optional<int> homogeneous_degree() const;

    std::optional<Weight> homogeneous_weight(const KoszulCdga& c) const;

    friend bool operator==(const CdgaElement&, const CdgaElement&) = default;

private:
    std::size_t n_even_;
    std::size_t n_odd_;
    std::map<Key, Rat> terms_;
};

CdgaElement cdga_add(const CdgaElement& a, const CdgaElement& b);
CdgaElement cdga_scale(const CdgaElement& a, const Rat& c);

/// Graded-commutative product with Koszul signs on the odd factors;
/// squares of odd generators vanish.
CdgaElement cdga_mul(const CdgaElement& a, const CdgaElement& b);

/// The degree -1 differential: d(x_i) = 0, d(u_j) = f_j, extended as a
/// graded derivation.
CdgaElement cdga_apply_d(const KoszulCdga& c, const CdgaElement& a);

/// Sets killed variables to zero and re-indexes the survivors; the
/// result lives over the algebra with the kept variables only.
CdgaElement cdga_kill_variables(const CdgaElement& a, const std::vector<bool>& even_killed,
                                const std::vector<bool>& odd_killed);

/// Chain character of the CDGA underlying graded algebra as a truncated
/// series against eta.  Every even generator must pair strictly
/// negatively with eta (levelwise finiteness); odd generators may sit at
/// any level since their factors are finite.
TruncatedSeries chain_character(const KoszulCdga& c, const Cocharacter& eta,
                                std::int64_t cutoff);

} // namespace stratloc
