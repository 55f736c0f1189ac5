#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stratloc/numeric.hpp"
#include "stratloc/weight.hpp"

namespace stratloc {

/// Exact multivariate polynomial over named even variables: a finite map
/// exponent-vector -> rational, no stored zeros.  Variable names and
/// weights live in the surrounding algebra; here only the arity is fixed.
class MultiPoly {
public:
    using Exponents = std::vector<int>;

    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const Rat& c) {
        MultiPoly p(nvars);
        p.add_term(Exponents(nvars, 0), c);
        return p;
    }

    static MultiPoly variable(std::size_t nvars, std::size_t index) {
        MultiPoly p(nvars);
        Exponents e(nvars, 0);
        e.at(index) = 1;
        p.add_term(e, Rat(1));
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const std::map<Exponents, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponents& e, const Rat& c);

    int total_degree() const;

    /// The common weight of all monomials under the given variable
    /// weights, or nullopt if inhomogeneous.  Zero is homogeneous of
    /// every weight; by convention its weight reports as nullopt only
    /// when a caller needs a definite value (handled at call sites).
    std::optional<Weight> homogeneous_weight(const std::vector<Weight>& var_weights) const;

    friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

private:
    std::size_t nvars_;
    std::map<Exponents, Rat> terms_;
};

MultiPoly poly_add(const MultiPoly& a, const MultiPoly& b);
MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b);
MultiPoly poly_scale(const MultiPoly& a, const Rat& c);

/// Sets the listed variables to zero, then drops them, re-indexing the
/// survivors in order.
MultiPoly poly_kill_variables(const MultiPoly& a, const std::vector<bool>& killed);

} // namespace stratloc
