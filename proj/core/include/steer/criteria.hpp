#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "steer/observables.hpp"
#include "steer/state.hpp"

namespace steer {

/// Each id names one left-hand side, summed over the two settings of every pair.
enum class CriterionId {
    BipartiteMuf,  // H(B|A)
    OneToTwoS1,    // H(BC|A)
    OneToTwoS2,    // H(B|A)
    OneToTwoS3,    // H(C|A)
    OneToTwoCB,    // H(B|A,C)
    OneToTwoCC,    // H(C|A,B)
    OneToTwoA,     // S1 + C_B + C_C
    TwoToOneT1,    // H(C|A,B)
    TwoToOneT2A,   // H(C|A)
    TwoToOneT2B,   // H(C|B)
    TwoToOneTsum,  // T2A + T2B
};

inline constexpr std::array<CriterionId, 11> kAllCriteria = {
    CriterionId::BipartiteMuf, CriterionId::OneToTwoS1,  CriterionId::OneToTwoS2,  CriterionId::OneToTwoS3,
    CriterionId::OneToTwoCB,   CriterionId::OneToTwoCC,  CriterionId::OneToTwoA,   CriterionId::TwoToOneT1,
    CriterionId::TwoToOneT2A,  CriterionId::TwoToOneT2B, CriterionId::TwoToOneTsum,
};

std::string_view to_string(CriterionId id);
/// Accepts the names produced by to_string plus "C" as an alias for C_B.
std::optional<CriterionId> parse_criterion(std::string_view name);

enum class Verdict { NoDetection, SteeringDetected, GmsDetected };
enum class BoundKind { Steering, Gms };
enum class Scenario { Bipartite, OneToTwo, TwoToOne };

std::string_view to_string(Verdict verdict);
std::string_view to_string(BoundKind kind);
std::string_view to_string(Scenario scenario);

/// Detection needs lhs < bound - kDetectionSlack, so saturated bounds never fire.
inline constexpr double kDetectionSlack = 1e-9;

struct CriterionReport {
    CriterionId id;
    double lhs;
    std::optional<double> steering_bound;
    std::optional<double> gms_bound;
    /// Weaker displayed form of the nonsteerable bound (-4 log2 alpha_min for A); informational.
    std::optional<double> quoted_bound;
    Verdict verdict;

    std::optional<double> bound(BoundKind kind) const;
    /// lhs - bound; negative means the bound is violated.
    std::optional<double> margin(BoundKind kind) const;
    bool violates(BoundKind kind) const;
};

Verdict judge(double lhs, std::optional<double> steering_bound, std::optional<double> gms_bound);

/// Observable pairs for parties A, B, C. Setting 0 measures every party's first observable.
struct TripartiteObservables {
    ObservablePair a;
    ObservablePair b;
    ObservablePair c;
};

TripartiteObservables pauli_observables();

std::vector<CriterionReport> evaluate_one_to_two(const DensityOperator &state, const ObservablePair &obs_a,
                                                 const ObservablePair &obs_b, const ObservablePair &obs_c);
std::vector<CriterionReport> evaluate_two_to_one(const DensityOperator &state, const ObservablePair &obs_a,
                                                 const ObservablePair &obs_b, const ObservablePair &obs_c);
CriterionReport evaluate_bipartite(const DensityOperator &state, const ObservablePair &obs_a,
                                   const ObservablePair &obs_b);

std::vector<CriterionReport> evaluate_one_to_two(const DensityOperator &state, const TripartiteObservables &obs);
std::vector<CriterionReport> evaluate_two_to_one(const DensityOperator &state, const TripartiteObservables &obs);

/// Any tripartite criterion (not BipartiteMuf).
CriterionReport evaluate_criterion(const DensityOperator &state, CriterionId id, const TripartiteObservables &obs);

const CriterionReport &find_report(std::span<const CriterionReport> reports, CriterionId id);

struct Classification {
    Verdict verdict;
    std::optional<CriterionId> criterion;  // first report reaching the verdict; empty for NoDetection
};

/// Strongest verdict across reports (GMS > steering > none). Throws EmptyInput on an empty list.
Classification classify(std::span<const CriterionReport> reports);

/// Header "id,lhs,steering_bound,gms_bound,verdict"; absent bounds are empty fields.
std::string reports_to_csv(std::span<const CriterionReport> reports);

}  // namespace steer
