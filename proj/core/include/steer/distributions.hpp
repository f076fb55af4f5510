#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "steer/observables.hpp"
#include "steer/state.hpp"

namespace steer {

/// Probability tensor over per-party outcomes, stored row-major in party order.
/// `parties` holds the original party positions (0 = A, 1 = B, ...) so marginals keep
/// their names.
class JointDistribution {
  public:
    JointDistribution(std::vector<double> probabilities, std::vector<std::size_t> shape);
    JointDistribution(std::vector<double> probabilities, std::vector<std::size_t> shape,
                      std::vector<std::size_t> parties);

    const std::vector<double> &probabilities() const noexcept { return probabilities_; }
    const std::vector<std::size_t> &shape() const noexcept { return shape_; }
    const std::vector<std::size_t> &parties() const noexcept { return parties_; }
    std::size_t size() const noexcept { return probabilities_.size(); }

    double at(std::span<const std::size_t> outcomes) const;
    double at(std::initializer_list<std::size_t> outcomes) const;

    /// Position of party label `party` within this tensor; throws BadPartyIndex if absent.
    std::size_t axis_of(std::size_t party) const;

  private:
    std::vector<double> probabilities_;
    std::vector<std::size_t> shape_;
    std::vector<std::size_t> parties_;
};

/// p(x_1, ..., x_n) = <x_1 ... x_n| rho |x_1 ... x_n> for one observable per party.
JointDistribution joint_distribution(const DensityOperator &state, std::span<const Observable> observables);
JointDistribution joint_distribution(const DensityOperator &state, std::initializer_list<Observable> observables);

/// Sums out every party label not in `keep`.
JointDistribution marginalize(const JointDistribution &dist, std::span<const std::size_t> keep);
JointDistribution marginalize(const JointDistribution &dist, std::initializer_list<std::size_t> keep);

/// CSV with one row per outcome tuple: one column per party (a,b,c,...) then probability.
std::string to_csv(const JointDistribution &dist);

}  // namespace steer
