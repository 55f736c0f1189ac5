#include "stratloc/character.hpp"

#include <algorithm>

namespace stratloc {

namespace {

std::string term_string(const WDKey& k, const Int& c) {
    std::string s = c.get_str();
    s += "*t^";
    s += to_string(k.w);
    s += "*q^";
    s += std::to_string(k.degree);
    return s;
}

std::string terms_string(const std::map<WDKey, Int>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms) {
        if (!out.empty()) out += " + ";
        out += term_string(k, c);
    }
    return out;
}

} // namespace

void BigradedCharacter::add_term(const Weight& w, int degree, const Int& coeff) {
    if (w.rank() != rank_) throw input_error("term weight rank mismatch");
    if (coeff == 0) return;
    WDKey key{w, degree};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

BigradedCharacter char_add(const BigradedCharacter& a, const BigradedCharacter& b) {
    if (a.rank() != b.rank()) throw input_error("character rank mismatch in char_add");
    BigradedCharacter r = a;
    for (const auto& [k, c] : b.terms()) r.add_term(k.w, k.degree, c);
    return r;
}

BigradedCharacter char_mul(const BigradedCharacter& a, const BigradedCharacter& b) {
    if (a.rank() != b.rank()) throw input_error("character rank mismatch in char_mul");
    BigradedCharacter r(a.rank());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms())
            r.add_term(ka.w + kb.w, ka.degree + kb.degree, ca * cb);
    return r;
}

BigradedCharacter char_negate(const BigradedCharacter& a) {
    BigradedCharacter r(a.rank());
    for (const auto& [k, c] : a.terms()) r.add_term(k.w, k.degree, -c);
    return r;
}

BigradedCharacter euler_specialize(const BigradedCharacter& a) {
    BigradedCharacter r(a.rank());
    for (const auto& [k, c] : a.terms()) {
        r.add_term(k.w, 0, (k.degree % 2 == 0) ? c : Int(-c));
    }
    return r;
}

Int coefficient_at(const BigradedCharacter& a, const Weight& w) {
    if (w.rank() != a.rank()) throw input_error("query weight rank mismatch");
    Int s = 0;
    for (const auto& [k, c] : a.terms()) {
        if (k.w == w) s += (k.degree % 2 == 0) ? c : Int(-c);
    }
    return s;
}

std::optional<std::int64_t> max_level(const BigradedCharacter& a, const Cocharacter& lambda) {
    std::optional<std::int64_t> best;
    for (const auto& [k, c] : a.terms()) {
        std::int64_t lv = pairing(lambda, k.w);
        if (!best || lv > *best) best = lv;
    }
    return best;
}

DetRank det_and_rank(const BigradedCharacter& generators) {
    DetRank dr;
    dr.weight = Weight::zero(generators.rank());
    for (const auto& [k, c] : generators.terms()) {
        if (c < 0) throw input_error("generator inventory has a negative multiplicity");
        if (!c.fits_slong_p()) throw input_error("generator multiplicity out of range");
        std::int64_t m = c.get_si();
        std::int64_t sign = (k.degree % 2 == 0) ? 1 : -1;
        for (std::size_t i = 0; i < dr.weight.v.size(); ++i)
            dr.weight.v[i] += sign * m * k.w.v[i];
        dr.rank += sign * m;
    }
    return dr;
}

void TruncatedSeries::add_term(const Weight& w, int degree, const Int& coeff) {
    if (w.rank() != rank_) throw input_error("term weight rank mismatch");
    if (coeff == 0) return;
    if (pairing(lambda_, w) < cutoff_) return;
    WDKey key{w, degree};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

std::int64_t TruncatedSeries::max_level() const {
    std::int64_t best = cutoff_;
    for (const auto& [k, c] : terms_) {
        std::int64_t lv = pairing(lambda_, k.w);
        if (lv > best) best = lv;
    }
    return best;
}

namespace {

void require_compatible(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.rank() != b.rank()) throw input_error("series rank mismatch");
    if (!(a.reference() == b.reference()))
        throw input_error("series reference cocharacter mismatch");
}

} // namespace

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_compatible(a, b);
    TruncatedSeries r(a.reference(), std::max(a.cutoff(), b.cutoff()), a.rank());
    for (const auto& [k, c] : a.terms()) r.add_term(k.w, k.degree, c);
    for (const auto& [k, c] : b.terms()) r.add_term(k.w, k.degree, c);
    return r;
}

TruncatedSeries series_add(const TruncatedSeries& a, const BigradedCharacter& b) {
    if (a.rank() != b.rank()) throw input_error("series/character rank mismatch");
    TruncatedSeries r = a;
    for (const auto& [k, c] : b.terms()) r.add_term(k.w, k.degree, c);
    return r;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_compatible(a, b);
    std::int64_t cutoff =
        std::max(a.cutoff() + b.max_level(), b.cutoff() + a.max_level());
    TruncatedSeries r(a.reference(), cutoff, a.rank());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms())
            r.add_term(ka.w + kb.w, ka.degree + kb.degree, ca * cb);
    return r;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const BigradedCharacter& b) {
    if (a.rank() != b.rank()) throw input_error("series/character rank mismatch");
    auto ml = max_level(b, a.reference());
    std::int64_t cutoff = a.cutoff() + (ml ? *ml : 0);
    TruncatedSeries r(a.reference(), cutoff, a.rank());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms())
            r.add_term(ka.w + kb.w, ka.degree + kb.degree, ca * cb);
    return r;
}

TruncatedSeries euler_specialize(const TruncatedSeries& a) {
    TruncatedSeries r(a.reference(), a.cutoff(), a.rank());
    for (const auto& [k, c] : a.terms())
        r.add_term(k.w, 0, (k.degree % 2 == 0) ? c : Int(-c));
    return r;
}

Int coefficient_at(const TruncatedSeries& a, const Weight& w) {
    if (w.rank() != a.rank()) throw input_error("query weight rank mismatch");
    std::int64_t lv = pairing(a.reference(), w);
    if (lv < a.cutoff()) {
        throw truncation_error("insufficient truncation: weight " + to_string(w) +
                               " lies at level " + std::to_string(lv) + " below cutoff " +
                               std::to_string(a.cutoff()));
    }
    Int s = 0;
    for (const auto& [k, c] : a.terms()) {
        if (k.w == w) s += (k.degree % 2 == 0) ? c : Int(-c);
    }
    return s;
}

TruncatedSeries sym_series(const BigradedCharacter& generators, const Cocharacter& lambda,
                           std::int64_t cutoff) {
    if (generators.rank() != lambda.rank())
        throw input_error("sym_series rank mismatch");
    TruncatedSeries acc = TruncatedSeries::unit(lambda, cutoff);
    for (const auto& [k, c] : generators.terms()) {
        if (c < 0) throw input_error("sym_series generator with negative multiplicity");
        if (!c.fits_slong_p() || c.get_si() > 4096)
            throw input_error("sym_series generator multiplicity out of range");
        std::int64_t level = pairing(lambda, k.w);
        if (level > -1) {
            throw inapplicable_error(
                "non-convergent Sym: generator at weight " + to_string(k.w) +
                " has lambda-level " + std::to_string(level) + " > -1");
        }
        TruncatedSeries factor(lambda, cutoff, lambda.rank());
        if (k.degree % 2 == 0) {
            // geometric factor, degree multiplied along powers
            Weight pw = Weight::zero(lambda.rank());
            std::int64_t lv = 0;
            int deg = 0;
            while (lv >= cutoff) {
                factor.add_term(pw, deg, 1);
                pw = pw + k.w;
                lv += level;
                deg += k.degree;
            }
        } else {
            // exterior factor: squares of odd generators vanish
            factor.add_term(Weight::zero(lambda.rank()), 0, 1);
            factor.add_term(k.w, k.degree, 1);
        }
        for (std::int64_t rep = 0; rep < c.get_si(); ++rep) {
            acc = series_mul(acc, factor);
            // all factors top out at level 0, so the cutoff is preserved
        }
    }
    return acc;
}

std::string canonical_string(const BigradedCharacter& a) { return terms_string(a.terms()); }

std::string canonical_string(const TruncatedSeries& a) { return terms_string(a.terms()); }

} // namespace stratloc
