#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "stratloc/cdga.hpp"

namespace stratloc {

struct ComplexGen {
    std::string name;
    int degree = 0;
    Weight weight;

    friend bool operator==(const ComplexGen&, const ComplexGen&) = default;
};

/// Finite free dg-module over a Koszul CDGA.  The differential is stored
/// as a sparse matrix of algebra elements: entries_[{k, l}] is the
/// coefficient of generator k in d(generator l).  Construction checks
/// that every entry is homogeneous of the forced degree and weight and
/// that d squares to zero symbolically, entry by entry.
class FreeComplex {
public:
    using EntryKey = std::pair<std::size_t, std::size_t>; // (target, source)
    using EntryMap = std::map<EntryKey, CdgaElement>;

    FreeComplex(std::shared_ptr<const KoszulCdga> base, std::vector<ComplexGen> gens,
                EntryMap entries);

    /// Rank-one free module on a single generator in degree zero and
    /// weight zero, zero differential.
    static FreeComplex unit(std::shared_ptr<const KoszulCdga> base);

    const KoszulCdga& base() const { return *base_; }
    const std::shared_ptr<const KoszulCdga>& base_ptr() const { return base_; }
    const std::vector<ComplexGen>& generators() const { return gens_; }
    const EntryMap& entries() const { return entries_; }

    /// Entry (target k, source l); zero element when absent.
    CdgaElement entry(std::size_t k, std::size_t l) const;

    /// Sum over generators of t^weight q^degree.
    BigradedCharacter generator_character() const;

private:
    std::shared_ptr<const KoszulCdga> base_;
    std::vector<ComplexGen> gens_;
    EntryMap entries_;
};

/// Structural equality: same base presentation, same generator list,
/// same entries.
bool same_presentation(const FreeComplex& a, const FreeComplex& b);

FreeComplex complex_direct_sum(const FreeComplex& a, const FreeComplex& b);

/// Tensor product over the base algebra, generators ordered pairs
/// (a-index major).  Differential d(e (x) f) = d(e) (x) f
/// + (-1)^{deg e} e (x) d(f) with Koszul signs from moving entry
/// coefficients past e.
FreeComplex complex_tensor(const FreeComplex& a, const FreeComplex& b);

/// Module dual Hom(F, A): generator degrees and weights negate, entries
/// transpose with the Koszul sign forced by d^2 = 0.
FreeComplex complex_dual(const FreeComplex& f);

/// Hom(F, G) presented as dual(F) (x) G.
FreeComplex complex_hom(const FreeComplex& f, const FreeComplex& g);

/// Homological shift by k: generator degrees move up by k, each entry
/// picks up (-1)^{k (1 + deg entry)}.
FreeComplex complex_shift(const FreeComplex& f, int k);

/// Twist by a character of the torus: all generator weights move by w.
FreeComplex complex_twist(const FreeComplex& f, const Weight& w);

/// Base change along killing a set of variables of the base algebra.
/// new_base must present the quotient: kept variables in order, with
/// differentials the killed images of the old ones.  Each killed odd
/// variable must have differential vanishing after the killing, else the
/// quotient is not a dg-algebra and input_error is thrown.
FreeComplex complex_restrict(const FreeComplex& f, std::shared_ptr<const KoszulCdga> new_base,
                             const std::vector<bool>& even_killed,
                             const std::vector<bool>& odd_killed);

} // namespace stratloc
