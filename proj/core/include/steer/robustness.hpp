#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "steer/criteria.hpp"
#include "steer/state.hpp"

namespace steer {

/// ghz: a|000> + sqrt(1-a^2)|111> in a. ghz-noise / w-noise: white-noise mixtures in p.
enum class Family { Ghz, GhzNoise, WNoise };

std::string_view to_string(Family family);
/// Throws BadFamily for unknown names.
Family parse_family(std::string_view name);
std::string_view parameter_name(Family family);
DensityOperator family_state(Family family, double parameter);

struct SweepResult {
    Family family;
    std::vector<double> grid;            // strictly increasing
    std::vector<CriterionId> criteria;
    std::vector<std::vector<CriterionReport>> reports;  // [grid point][criterion]

    std::vector<double> lhs_series(CriterionId id) const;
};

/// Evaluates `criteria` on `steps` evenly spaced parameter values in [from, to].
SweepResult sweep(Family family, double from, double to, std::size_t steps, std::span<const CriterionId> criteria,
                  const TripartiteObservables &obs = pauli_observables());

/// Header "parameter,criterion,lhs,steering_bound,gms_bound"; 12 significant digits.
std::string to_csv(const SweepResult &result);

struct ThresholdOptions {
    double tolerance = 1e-4;
    std::size_t grid_points = 101;
    double from = 0.0;
    double to = 1.0;
};

struct Threshold {
    CriterionId criterion;
    BoundKind bound;
    std::optional<double> p_star;  // empty when no grid point violates the bound
    double bracket = 0.0;          // violated at p_star + bracket, not at p_star - bracket

    bool found() const noexcept { return p_star.has_value(); }
};

/// Scans the grid for the lowest parameter violating the bound, then bisects the bracketing
/// cell down to `tolerance`.
Threshold find_threshold(Family family, CriterionId criterion, BoundKind bound,
                         const ThresholdOptions &options = {},
                         const TripartiteObservables &obs = pauli_observables());

}  // namespace steer
