#pragma once

#include <cstdint>
#include <vector>

#include "stratloc/complex.hpp"

namespace stratloc {

/// Homology dimensions of one isotypic weight slice, per homological
/// degree.  dims[i] is the dimension in degree min_degree + i.
/// `stabilized` records that the answer agrees with the one computed at
/// degree_bound - 1, the working convergence certificate for slices that
/// are finite dimensional or eventually constant.
struct HomologyResult {
    int min_degree = 0;
    std::vector<std::int64_t> dims;
    bool stabilized = false;

    std::int64_t dim(int degree) const;
    Int euler() const;
};

/// Exact homology of the weight-w isotypic slice of the chain complex of
/// f (base algebra tensored against the generators), computed on the
/// finite basis of monomial chains of polynomial degree <= degree_bound.
/// Kernels are exact; boundaries are those of chains within the bound,
/// so dimensions can only over-count and shrink as the bound grows.
HomologyResult weight_truncated_homology(const FreeComplex& f, const Weight& w,
                                         int degree_bound);

HomologyResult weight0_truncated_homology(const FreeComplex& f, int degree_bound);

} // namespace stratloc
