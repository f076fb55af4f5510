#pragma once

#include <cstddef>
#include <span>

#include "steer/distributions.hpp"
#include "steer/state.hpp"

// All entropies are in bits. Probabilities below 1e-15 count as exact zeros.
namespace steer {

inline constexpr double kZeroProbability = 1e-15;

double shannon_entropy(std::span<const double> probabilities);
double shannon_entropy(const JointDistribution &dist);

/// H(T | G) = H(T u G) - H(G). Party sets are labels (0 = A, ...); `given` may be empty.
/// Throws BadPartition when the sets overlap or `target` is empty.
double conditional_entropy(const JointDistribution &dist, std::span<const std::size_t> target,
                           std::span<const std::size_t> given);
double conditional_entropy(const JointDistribution &dist, std::initializer_list<std::size_t> target,
                           std::initializer_list<std::size_t> given);

/// D(p || q); +infinity when q vanishes where p does not.
double relative_entropy(const JointDistribution &p, const JointDistribution &q);

double von_neumann_entropy(const DensityOperator &state);

/// S(T | G) = S(rho_TG) - S(rho_G); negative values witness entanglement.
double von_neumann_conditional(const DensityOperator &state, std::size_t target, std::size_t given);

}  // namespace steer
