#include "stratloc/stack.hpp"

#include <set>

namespace stratloc {

StackModel::StackModel(std::size_t rank, std::vector<Coordinate> coords,
                       std::vector<Relation> rels, Weight linearization)
    : rank_(rank), coords_(std::move(coords)), rels_(std::move(rels)),
      linearization_(std::move(linearization)) {
    if (rank_ == 0) throw input_error("torus rank must be positive");
    if (linearization_.rank() != rank_)
        throw input_error("linearization has rank " + std::to_string(linearization_.rank()) +
                          ", model has rank " + std::to_string(rank_));

    std::set<std::string> names;
    std::vector<Weight> action_weights;
    for (const auto& c : coords_) {
        if (c.name.empty() || !names.insert(c.name).second)
            throw input_error("duplicate or empty coordinate name '" + c.name + "'");
        if (c.action_weight.rank() != rank_)
            throw input_error("coordinate '" + c.name + "' has weight of wrong rank");
        action_weights.push_back(c.action_weight);
    }
    for (const auto& u : rels_) {
        if (u.name.empty() || !names.insert(u.name).second)
            throw input_error("duplicate or empty relation name '" + u.name + "'");
        if (u.action_weight.rank() != rank_)
            throw input_error("relation '" + u.name + "' has weight of wrong rank");
        if (u.du.nvars() != coords_.size())
            throw input_error("relation '" + u.name + "' has differential in " +
                              std::to_string(u.du.nvars()) + " variables, expected " +
                              std::to_string(coords_.size()));
        if (!u.du.is_zero()) {
            auto w = u.du.homogeneous_weight(action_weights);
            if (!w)
                throw input_error("relation '" + u.name +
                                  "' has an inhomogeneous differential");
            if (!(*w == u.action_weight))
                throw input_error("relation '" + u.name + "' has weight " +
                                  to_string(u.action_weight) + " but its differential has weight " +
                                  to_string(*w));
        }
    }

    std::vector<EvenVar> evens;
    evens.reserve(coords_.size());
    for (const auto& c : coords_) evens.push_back({c.name, -c.action_weight});
    std::vector<OddVar> odds;
    odds.reserve(rels_.size());
    for (const auto& u : rels_) odds.push_back({u.name, -u.action_weight, u.du});
    algebra_ = std::make_shared<const KoszulCdga>(rank_, std::move(evens), std::move(odds));
}

CotangentData StackModel::cotangent() const {
    CotangentData data{BigradedCharacter(rank_), Weight::zero(rank_), 0};
    for (const auto& x : algebra_->evens()) data.character.add_term(x.weight, 0, 1);
    for (const auto& u : algebra_->odds()) data.character.add_term(u.weight, 1, 1);
    data.character.add_term(Weight::zero(rank_), -1, static_cast<std::int64_t>(rank_));
    DetRank dr = det_and_rank(data.character);
    data.det_weight = dr.weight;
    data.euler_rank = dr.rank;
    return data;
}

} // namespace stratloc
