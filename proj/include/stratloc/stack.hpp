#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stratloc/cdga.hpp"

namespace stratloc {

/// Even coordinate of the affine model, carrying the weight of the torus
/// ACTION on the coordinate.  Functions on the stack transform by the
/// negated weight; that conversion happens once, inside StackModel.
struct Coordinate {
    std::string name;
    Weight action_weight;

    friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

/// Odd relation generator in homological degree one with differential
/// du = f(x), a polynomial in the coordinates, homogeneous of the
/// relation's action weight.
struct Relation {
    std::string name;
    Weight action_weight;
    MultiPoly du;

    friend bool operator==(const Relation&, const Relation&) = default;
};

/// Cotangent data of the quotient: coordinate forms in degree 0,
/// relation forms in degree 1, the torus directions in degree -1 at
/// weight zero.
struct CotangentData {
    BigradedCharacter character;
    Weight det_weight;       // alternating sum of weights
    std::int64_t euler_rank; // n_coords - n_relations - rank
};

/// Affine quasi-smooth model [Spec(k[x] (x) Lambda[u], du = f) / T] with
/// a chosen linearization character.  Inputs use action weights; the
/// internal algebra stores representation weights (their negatives), and
/// all downstream computation is in representation weights.
class StackModel {
public:
    StackModel(std::size_t rank, std::vector<Coordinate> coords, std::vector<Relation> rels,
               Weight linearization);

    std::size_t rank() const { return rank_; }
    const std::vector<Coordinate>& coordinates() const { return coords_; }
    const std::vector<Relation>& relations() const { return rels_; }
    const Weight& linearization() const { return linearization_; }

    const KoszulCdga& algebra() const { return *algebra_; }
    const std::shared_ptr<const KoszulCdga>& algebra_ptr() const { return algebra_; }

    CotangentData cotangent() const;

    friend bool operator==(const StackModel& a, const StackModel& b) {
        return a.rank_ == b.rank_ && a.coords_ == b.coords_ && a.rels_ == b.rels_ &&
               a.linearization_ == b.linearization_;
    }

private:
    std::size_t rank_;
    std::vector<Coordinate> coords_;
    std::vector<Relation> rels_;
    Weight linearization_;
    std::shared_ptr<const KoszulCdga> algebra_;
};

} // namespace stratloc
