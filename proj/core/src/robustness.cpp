#include "steer/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "steer/error.hpp"

namespace steer {

namespace {

bool is_two_to_one(CriterionId id) {
    return id == CriterionId::TwoToOneT1 || id == CriterionId::TwoToOneT2A || id == CriterionId::TwoToOneT2B ||
           id == CriterionId::TwoToOneTsum;
}

std::vector<CriterionReport> evaluate_selected(const DensityOperator &state, std::span<const CriterionId> criteria,
                                               const TripartiteObservables &obs) {
    std::optional<std::vector<CriterionReport>> one_to_two, two_to_one;
    std::vector<CriterionReport> out;
    out.reserve(criteria.size());
    for (CriterionId id : criteria) {
        if (id == CriterionId::BipartiteMuf) {
            throw Error(ErrorCode::BadArity, "MUF is bipartite and cannot be swept over a tripartite family");
        }
        auto &cache = is_two_to_one(id) ? two_to_one : one_to_two;
        if (!cache) cache = is_two_to_one(id) ? evaluate_two_to_one(state, obs) : evaluate_one_to_two(state, obs);
        out.push_back(find_report(*cache, id));
    }
    return out;
}

bool violated(Family family, double parameter, CriterionId criterion, BoundKind bound,
              const TripartiteObservables &obs) {
    return evaluate_criterion(family_state(family, parameter), criterion, obs).violates(bound);
}

}  // namespace

std::string_view to_string(Family family) {
    switch (family) {
        case Family::Ghz: return "ghz";
        case Family::GhzNoise: return "ghz-noise";
        case Family::WNoise: return "w-noise";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    for (Family f : {Family::Ghz, Family::GhzNoise, Family::WNoise}) {
        if (to_string(f) == name) return f;
    }
    throw Error(ErrorCode::BadFamily, "unknown state family '" + std::string(name) + "'");
}

std::string_view parameter_name(Family family) { return family == Family::Ghz ? "a" : "p"; }

DensityOperator family_state(Family family, double parameter) {
    switch (family) {
        case Family::Ghz: return ghz_family(parameter).projector();
        case Family::GhzNoise: return white_noise_mix(ghz_state(), parameter);
        case Family::WNoise: return white_noise_mix(w_state(), parameter);
    }
    throw Error(ErrorCode::BadFamily, "unknown state family");
}

std::vector<double> SweepResult::lhs_series(CriterionId id) const {
    const auto it = std::find(criteria.begin(), criteria.end(), id);
    if (it == criteria.end()) {
        throw Error(ErrorCode::EmptyInput, std::string("criterion ") + std::string(to_string(id)) + " was not swept");
    }
    const auto k = static_cast<std::size_t>(it - criteria.begin());
    std::vector<double> out;
    out.reserve(reports.size());
    for (const auto &row : reports) out.push_back(row[k].lhs);
    return out;
}

SweepResult sweep(Family family, double from, double to, std::size_t steps, std::span<const CriterionId> criteria,
                  const TripartiteObservables &obs) {
    if (steps < 2) throw Error(ErrorCode::DomainError, "a sweep needs at least 2 steps");
    if (!(from < to)) throw Error(ErrorCode::DomainError, "sweep range must satisfy from < to");
    if (criteria.empty()) throw Error(ErrorCode::EmptyInput, "no criteria to sweep");

    SweepResult result{family, {}, {criteria.begin(), criteria.end()}, {}};
    result.grid.reserve(steps);
    result.reports.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
        const double x = i + 1 == steps ? to : from + t * (to - from);
        result.grid.push_back(x);
        result.reports.push_back(evaluate_selected(family_state(family, x), criteria, obs));
    }
    return result;
}

std::string to_csv(const SweepResult &result) {
    std::ostringstream out;
    out << "parameter,criterion,lhs,steering_bound,gms_bound\n" << std::setprecision(12);
    for (std::size_t i = 0; i < result.grid.size(); ++i) {
        for (const auto &r : result.reports[i]) {
            out << result.grid[i] << ',' << to_string(r.id) << ',' << r.lhs << ',';
            if (r.steering_bound) out << *r.steering_bound;
            out << ',';
            if (r.gms_bound) out << *r.gms_bound;
            out << '\n';
        }
    }
    return out.str();
}

Threshold find_threshold(Family family, CriterionId criterion, BoundKind bound, const ThresholdOptions &options,
                         const TripartiteObservables &obs) {
    if (!(options.tolerance > 0.0)) throw Error(ErrorCode::DomainError, "tolerance must be positive");
    if (options.grid_points < 2) throw Error(ErrorCode::DomainError, "threshold scan needs at least 2 points");
    if (!(options.from < options.to)) throw Error(ErrorCode::DomainError, "scan range must satisfy from < to");

    Threshold result{criterion, bound, std::nullopt, 0.0};
    const auto point = [&](std::size_t i) {
        if (i + 1 == options.grid_points) return options.to;
        return options.from + (options.to - options.from) * static_cast<double>(i) /
                                  static_cast<double>(options.grid_points - 1);
    };

    // Lowest onset on the grid; later re-entries are ignored.
    std::optional<std::size_t> onset;
    for (std::size_t i = 0; i < options.grid_points; ++i) {
        if (violated(family, point(i), criterion, bound, obs)) {
            onset = i;
            break;
        }
    }
    if (!onset) return result;
    if (*onset == 0) {
        result.p_star = options.from;
        return result;
    }

    double lo = point(*onset - 1);
    double hi = point(*onset);
    while (hi - lo > options.tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (violated(family, mid, criterion, bound, obs)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    result.p_star = 0.5 * (lo + hi);
    result.bracket = 0.5 * (hi - lo);
    return result;
}

}  // namespace steer
