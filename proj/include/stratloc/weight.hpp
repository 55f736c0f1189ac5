#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "stratloc/error.hpp"

namespace stratloc {

/// A character lattice weight for a split torus of rank r: an integer
/// vector of length r.  All internal weights are representation weights
/// (a coordinate carrying action weight w contributes a function
/// generator of representation weight -w; the conversion happens once,
/// at model construction).
struct Weight {
    std::vector<std::int64_t> v;

    Weight() = default;
    explicit Weight(std::vector<std::int64_t> comps) : v(std::move(comps)) {}
    static Weight zero(std::size_t rank) { return Weight(std::vector<std::int64_t>(rank, 0)); }

    std::size_t rank() const { return v.size(); }

    friend bool operator==(const Weight&, const Weight&) = default;
    friend auto operator<=>(const Weight& a, const Weight& b) {
        return a.v <=> b.v;
    }
};

/// A one-parameter subgroup of the torus: an integer vector of length r,
/// pairing with weights by the dot product.
struct Cocharacter {
    std::vector<std::int64_t> v;

    Cocharacter() = default;
    explicit Cocharacter(std::vector<std::int64_t> comps) : v(std::move(comps)) {}

    std::size_t rank() const { return v.size(); }

    bool is_zero() const {
        for (auto c : v)
            if (c != 0) return false;
        return true;
    }

    friend bool operator==(const Cocharacter&, const Cocharacter&) = default;
    friend auto operator<=>(const Cocharacter& a, const Cocharacter& b) {
        return a.v <=> b.v;
    }
};

inline Weight operator+(const Weight& a, const Weight& b) {
    if (a.rank() != b.rank()) throw input_error("weight rank mismatch in addition");
    Weight r = a;
    for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] += b.v[i];
    return r;
}

inline Weight operator-(const Weight& a, const Weight& b) {
    if (a.rank() != b.rank()) throw input_error("weight rank mismatch in subtraction");
    Weight r = a;
    for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] -= b.v[i];
    return r;
}

inline Weight operator-(const Weight& a) {
    Weight r = a;
    for (auto& c : r.v) c = -c;
    return r;
}

/// <lambda, w>: the integer pairing of a cocharacter with a weight.
inline std::int64_t pairing(const Cocharacter& lambda, const Weight& w) {
    if (lambda.rank() != w.rank()) throw input_error("cocharacter/weight rank mismatch");
    std::int64_t s = 0;
    for (std::size_t i = 0; i < w.v.size(); ++i) s += lambda.v[i] * w.v[i];
    return s;
}

/// Divides out the gcd of the components; the zero vector is returned
/// unchanged.  sign convention: the direction is preserved.
inline Cocharacter make_primitive(Cocharacter c) {
    std::int64_t g = 0;
    for (auto x : c.v) g = std::gcd(g, x);
    if (g > 1) {
        for (auto& x : c.v) x /= g;
    }
    return c;
}

inline std::string to_string(const Weight& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(w.v[i]);
    }
    s += ")";
    return s;
}

inline std::string to_string(const Cocharacter& c) {
    return to_string(Weight(c.v));
}

} // namespace stratloc
