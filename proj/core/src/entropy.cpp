#include "steer/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "steer/error.hpp"

namespace steer {

double shannon_entropy(std::span<const double> probabilities) {
    double h = 0.0;
    for (double p : probabilities) {
        if (p > kZeroProbability) h -= p * std::log2(p);
    }
    return h;
}

double shannon_entropy(const JointDistribution &dist) { return shannon_entropy(dist.probabilities()); }

double conditional_entropy(const JointDistribution &dist, std::span<const std::size_t> target,
                           std::span<const std::size_t> given) {
    if (target.empty()) throw Error(ErrorCode::BadPartition, "target party set is empty");
    for (std::size_t t : target) {
        if (std::find(given.begin(), given.end(), t) != given.end()) {
            throw Error(ErrorCode::BadPartition, std::string("party ") + PartyLayout::party_name(t) +
                                                     " appears in both target and condition");
        }
    }
    std::vector<std::size_t> joint(target.begin(), target.end());
    joint.insert(joint.end(), given.begin(), given.end());
    const double h_joint = shannon_entropy(marginalize(dist, joint));
    if (given.empty()) return h_joint;
    // Exact arithmetic gives >= 0; clip the roundoff below it.
    return std::max(0.0, h_joint - shannon_entropy(marginalize(dist, given)));
}

double conditional_entropy(const JointDistribution &dist, std::initializer_list<std::size_t> target,
                           std::initializer_list<std::size_t> given) {
    return conditional_entropy(dist, std::span<const std::size_t>(target.begin(), target.size()),
                               std::span<const std::size_t>(given.begin(), given.size()));
}

double relative_entropy(const JointDistribution &p, const JointDistribution &q) {
    if (p.shape() != q.shape()) throw Error(ErrorCode::DimensionMismatch, "distributions differ in shape");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p.probabilities()[i];
        const double qi = q.probabilities()[i];
        if (pi <= kZeroProbability) continue;
        if (qi <= kZeroProbability) return std::numeric_limits<double>::infinity();
        d += pi * std::log2(pi / qi);
    }
    return d;
}

double von_neumann_entropy(const DensityOperator &state) {
    const Eigen::VectorXd evals = state.eigenvalues();
    return shannon_entropy(std::span<const double>(evals.data(), static_cast<std::size_t>(evals.size())));
}

double von_neumann_conditional(const DensityOperator &state, std::size_t target, std::size_t given) {
    if (target == given) throw Error(ErrorCode::BadPartition, "target and condition are the same party");
    const DensityOperator joint = partial_trace(state, {target, given});
    const DensityOperator cond = partial_trace(state, {given});
    return von_neumann_entropy(joint) - von_neumann_entropy(cond);
}

}  // namespace steer
