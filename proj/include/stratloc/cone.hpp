#pragma once

#include <optional>
#include <vector>

#include "stratloc/numeric.hpp"
#include "stratloc/weight.hpp"

namespace stratloc {

using RatVec = std::vector<Rat>;

/// Exact membership of target in the cone of non-negative rational
/// combinations of the generators (Caratheodory: a point of the cone is a
/// non-negative combination of some linearly independent subset).
bool in_cone(const std::vector<Weight>& gens, const Weight& target);

/// Orthogonal projection of v onto {x : <a_i, x> >= 0 for all i},
/// computed exactly by enumerating candidate active sets and taking the
/// feasible candidate closest to v.
RatVec project_to_cone(const std::vector<Weight>& constraints, const RatVec& v);

/// A rational point of {x : a_i . x <= b_i}, by Fourier-Motzkin
/// elimination; nullopt when the system is infeasible.
std::optional<RatVec> feasible_point(const std::vector<std::pair<RatVec, Rat>>& constraints,
                                     std::size_t dim);

/// An integral cocharacter pairing <= -1 with every listed weight;
/// nullopt when none exists.  An empty weight list yields zero.
std::optional<Cocharacter> strictly_negative_functional(std::size_t rank,
                                                        const std::vector<Weight>& weights);

/// Primitive integral generator of the ray through a nonzero rational
/// vector.
Cocharacter integral_direction(const RatVec& q);

} // namespace stratloc
