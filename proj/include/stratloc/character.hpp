#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "stratloc/numeric.hpp"
#include "stratloc/weight.hpp"

namespace stratloc {

/// Key of a bigraded term: lattice weight plus homological degree.
struct WDKey {
    Weight w;
    int degree = 0;

    friend bool operator==(const WDKey&, const WDKey&) = default;
    friend auto operator<=>(const WDKey& a, const WDKey& b) {
        if (auto c = a.w <=> b.w; c != 0) return c;
        return a.degree <=> b.degree;
    }
};

/// Exact character of a finite bigraded object: a finite map
/// (weight, degree) -> arbitrary-precision integer, never storing zeros.
/// Also used as a generator inventory (coefficients = multiplicities).
class BigradedCharacter {
public:
    explicit BigradedCharacter(std::size_t rank) : rank_(rank) {}

    static BigradedCharacter unit(std::size_t rank) {
        BigradedCharacter c(rank);
        c.add_term(Weight::zero(rank), 0, 1);
        return c;
    }

    static BigradedCharacter single(const Weight& w, int degree, const Int& coeff = 1) {
        BigradedCharacter c(w.rank());
        c.add_term(w, degree, coeff);
        return c;
    }

    std::size_t rank() const { return rank_; }
    const std::map<WDKey, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Weight& w, int degree, const Int& coeff);

    friend bool operator==(const BigradedCharacter&, const BigradedCharacter&) = default;

private:
    std::size_t rank_;
    std::map<WDKey, Int> terms_;
};

BigradedCharacter char_add(const BigradedCharacter& a, const BigradedCharacter& b);
BigradedCharacter char_mul(const BigradedCharacter& a, const BigradedCharacter& b);
BigradedCharacter char_negate(const BigradedCharacter& a);

/// Collapses homological degree with sign (-1)^degree; a ring homomorphism.
BigradedCharacter euler_specialize(const BigradedCharacter& a);

/// Signed sum over degrees of the coefficients at lattice weight w.
Int coefficient_at(const BigradedCharacter& a, const Weight& w);

/// Largest <lambda, w> over the support; nullopt when empty.
std::optional<std::int64_t> max_level(const BigradedCharacter& a, const Cocharacter& lambda);

struct DetRank {
    Weight weight;
    std::int64_t rank = 0;
};

/// Determinant weight and virtual rank of a generator inventory:
/// weight = sum of (-1)^degree * weight_i, rank = sum of (-1)^degree,
/// both counted with multiplicity.
DetRank det_and_rank(const BigradedCharacter& generators);

/// Character series truncated against a reference cocharacter: stores
/// exactly the terms with <lambda, weight> >= cutoff.  Coefficients at
/// levels below the cutoff are unknown, never assumed zero.
class TruncatedSeries {
public:
    TruncatedSeries(Cocharacter lambda, std::int64_t cutoff, std::size_t rank)
        : lambda_(std::move(lambda)), cutoff_(cutoff), rank_(rank) {
        if (lambda_.rank() != rank_) throw input_error("reference cocharacter rank mismatch");
    }

    static TruncatedSeries unit(const Cocharacter& lambda, std::int64_t cutoff) {
        TruncatedSeries s(lambda, cutoff, lambda.rank());
        s.add_term(Weight::zero(lambda.rank()), 0, 1);
        return s;
    }

    const Cocharacter& reference() const { return lambda_; }
    std::int64_t cutoff() const { return cutoff_; }
    std::size_t rank() const { return rank_; }
    const std::map<WDKey, Int>& terms() const { return terms_; }

    /// Terms strictly below the cutoff are silently dropped: they are
    /// outside the guaranteed range by definition.
    void add_term(const Weight& w, int degree, const Int& coeff);

    /// Largest stored level; the cutoff itself when the series is empty.
    std::int64_t max_level() const;

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    Cocharacter lambda_;
    std::int64_t cutoff_;
    std::size_t rank_;
    std::map<WDKey, Int> terms_;
};

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_add(const TruncatedSeries& a, const BigradedCharacter& b);

/// Product with pessimistic cutoff propagation:
/// cutoff = max(cutoff_a + max_level_b, cutoff_b + max_level_a).
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// Product with an exact character; only the series cutoff degrades,
/// by the character's maximal level.
TruncatedSeries series_mul(const TruncatedSeries& a, const BigradedCharacter& b);

TruncatedSeries euler_specialize(const TruncatedSeries& a);

/// Signed sum over degrees at lattice weight w; throws truncation_error
/// when <lambda, w> lies below the cutoff.
Int coefficient_at(const TruncatedSeries& a, const Weight& w);

/// Character of the free graded-commutative algebra on the given
/// generators, truncated at `cutoff` against lambda.  Every generator
/// must satisfy <lambda, weight> <= -1 (otherwise the series does not
/// converge levelwise and an inapplicable_error is raised).  Even
/// homological degrees contribute geometric factors with degree
/// multiplied along powers; odd degrees contribute square-free two-term
/// factors.
TruncatedSeries sym_series(const BigradedCharacter& generators, const Cocharacter& lambda,
                           std::int64_t cutoff);

/// Canonical text form: terms sorted by (weight lex, degree), each
/// rendered as coeff*t^(w1,..,wr)*q^d, joined by " + "; "0" when empty.
std::string canonical_string(const BigradedCharacter& a);
std::string canonical_string(const TruncatedSeries& a);

} // namespace stratloc
