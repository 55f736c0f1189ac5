#pragma once

#include <gmpxx.h>

#include <string>

#include "stratloc/error.hpp"

namespace stratloc {

/// Exact arbitrary-precision integer.
using Int = mpz_class;

/// Exact arbitrary-precision rational, always kept in canonical form.
using Rat = mpq_class;

inline std::string to_string(const Int& z) { return z.get_str(); }

/// Canonical rational rendering: "p" when the denominator is 1, else "p/q".
inline std::string to_string(const Rat& q) { return q.get_str(); }

/// Parses "p" or "p/q" with optional sign; q must be nonzero.
inline Rat parse_rational(const std::string& text) {
    Rat q;
    if (q.set_str(text, 10) != 0) {
        throw input_error("invalid rational literal '" + text + "'");
    }
    if (q.get_den() == 0) {
        throw input_error("zero denominator in rational literal '" + text + "'");
    }
    q.canonicalize();
    return q;
}

} // namespace stratloc
