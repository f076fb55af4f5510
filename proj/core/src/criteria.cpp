#include "steer/criteria.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "steer/distributions.hpp"
#include "steer/entropy.hpp"
#include "steer/error.hpp"

namespace steer {

namespace {

constexpr std::size_t A = 0, B = 1, C = 2;

void require_parties(const DensityOperator &state, std::size_t n) {
    if (state.layout().party_count() != n) {
        std::ostringstream msg;
        msg << "criterion needs a " << n << "-party state, got " << state.layout().party_count();
        throw Error(ErrorCode::BadArity, msg.str());
    }
}

std::array<JointDistribution, 2> setting_distributions(const DensityOperator &state,
                                                       std::span<const ObservablePair *const> pairs) {
    auto measure = [&](std::size_t setting) {
        std::vector<Observable> obs;
        for (const ObservablePair *pair : pairs) obs.push_back(pair->setting(setting));
        return joint_distribution(state, obs);
    };
    return {measure(0), measure(1)};
}

/// Sum over both settings of H(target | given).
double summed(const std::array<JointDistribution, 2> &dists, std::initializer_list<std::size_t> target,
              std::initializer_list<std::size_t> given) {
    return conditional_entropy(dists[0], target, given) + conditional_entropy(dists[1], target, given);
}

CriterionReport make_report(CriterionId id, double lhs, std::optional<double> steering,
                            std::optional<double> gms = std::nullopt, std::optional<double> quoted = std::nullopt) {
    return CriterionReport{id, lhs, steering, gms, quoted, judge(lhs, steering, gms)};
}

void write_optional(std::ostream &out, std::optional<double> v) {
    if (v) out << *v;
}

}  // namespace

std::string_view to_string(CriterionId id) {
    switch (id) {
        case CriterionId::BipartiteMuf: return "MUF";
        case CriterionId::OneToTwoS1: return "S1";
        case CriterionId::OneToTwoS2: return "S2";
        case CriterionId::OneToTwoS3: return "S3";
        case CriterionId::OneToTwoCB: return "C_B";
        case CriterionId::OneToTwoCC: return "C_C";
        case CriterionId::OneToTwoA: return "A";
        case CriterionId::TwoToOneT1: return "T1";
        case CriterionId::TwoToOneT2A: return "T2A";
        case CriterionId::TwoToOneT2B: return "T2B";
        case CriterionId::TwoToOneTsum: return "Tsum";
    }
    return "?";
}

std::optional<CriterionId> parse_criterion(std::string_view name) {
    if (name == "C" || name == "CB") return CriterionId::OneToTwoCB;
    if (name == "CC") return CriterionId::OneToTwoCC;
    for (CriterionId id : kAllCriteria) {
        if (to_string(id) == name) return id;
    }
    return std::nullopt;
}

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::NoDetection: return "NoDetection";
        case Verdict::SteeringDetected: return "SteeringDetected";
        case Verdict::GmsDetected: return "GmsDetected";
    }
    return "?";
}

std::string_view to_string(BoundKind kind) { return kind == BoundKind::Steering ? "steering" : "gms"; }

std::string_view to_string(Scenario scenario) {
    switch (scenario) {
        case Scenario::Bipartite: return "bipartite";
        case Scenario::OneToTwo: return "one-to-two";
        case Scenario::TwoToOne: return "two-to-one";
    }
    return "?";
}

std::optional<double> CriterionReport::bound(BoundKind kind) const {
    return kind == BoundKind::Steering ? steering_bound : gms_bound;
}

std::optional<double> CriterionReport::margin(BoundKind kind) const {
    if (auto b = bound(kind)) return lhs - *b;
    return std::nullopt;
}

bool CriterionReport::violates(BoundKind kind) const {
    auto b = bound(kind);
    return b && lhs < *b - kDetectionSlack;
}

Verdict judge(double lhs, std::optional<double> steering_bound, std::optional<double> gms_bound) {
    if (gms_bound && lhs < *gms_bound - kDetectionSlack) return Verdict::GmsDetected;
    if (steering_bound && lhs < *steering_bound - kDetectionSlack) return Verdict::SteeringDetected;
    return Verdict::NoDetection;
}

TripartiteObservables pauli_observables() { return {pauli_pair(), pauli_pair(), pauli_pair()}; }

std::vector<CriterionReport> evaluate_one_to_two(const DensityOperator &state, const ObservablePair &obs_a,
                                                 const ObservablePair &obs_b, const ObservablePair &obs_c) {
    require_parties(state, 3);
    const std::array<const ObservablePair *, 3> pairs = {&obs_a, &obs_b, &obs_c};
    const auto dists = setting_distributions(state, pairs);

    const CompositeOverlap overlap = composite_overlap(obs_b, obs_c);
    const double bound_bc = -std::log2(overlap.alpha_bc);
    const double bound_min = -std::log2(overlap.alpha_min);
    const double bound_b = -std::log2(obs_b.alpha());
    const double bound_c = -std::log2(obs_c.alpha());

    const double s1 = summed(dists, {B, C}, {A});
    const double s2 = summed(dists, {B}, {A});
    const double s3 = summed(dists, {C}, {A});
    const double cb = summed(dists, {B}, {A, C});
    const double cc = summed(dists, {C}, {A, B});

    return {
        make_report(CriterionId::OneToTwoS1, s1, bound_bc, bound_min),
        make_report(CriterionId::OneToTwoS2, s2, bound_b),
        make_report(CriterionId::OneToTwoS3, s3, bound_c),
        make_report(CriterionId::OneToTwoCB, cb, bound_b),
        make_report(CriterionId::OneToTwoCC, cc, bound_c),
        make_report(CriterionId::OneToTwoA, s1 + cb + cc, 2.0 * bound_bc, 2.0 * bound_min, 4.0 * bound_min),
    };
}

std::vector<CriterionReport> evaluate_two_to_one(const DensityOperator &state, const ObservablePair &obs_a,
                                                 const ObservablePair &obs_b, const ObservablePair &obs_c) {
    require_parties(state, 3);
    const std::array<const ObservablePair *, 3> pairs = {&obs_a, &obs_b, &obs_c};
    const auto dists = setting_distributions(state, pairs);

    const double bound_c = -std::log2(obs_c.alpha());
    const double t1 = summed(dists, {C}, {A, B});
    const double t2a = summed(dists, {C}, {A});
    const double t2b = summed(dists, {C}, {B});

    return {
        make_report(CriterionId::TwoToOneT1, t1, bound_c),
        make_report(CriterionId::TwoToOneT2A, t2a, bound_c),
        make_report(CriterionId::TwoToOneT2B, t2b, bound_c),
        make_report(CriterionId::TwoToOneTsum, t2a + t2b, 2.0 * bound_c, bound_c),
    };
}

CriterionReport evaluate_bipartite(const DensityOperator &state, const ObservablePair &obs_a,
                                   const ObservablePair &obs_b) {
    require_parties(state, 2);
    const std::array<const ObservablePair *, 2> pairs = {&obs_a, &obs_b};
    const auto dists = setting_distributions(state, pairs);
    return make_report(CriterionId::BipartiteMuf, summed(dists, {B}, {A}), -std::log2(obs_b.alpha()));
}

std::vector<CriterionReport> evaluate_one_to_two(const DensityOperator &state, const TripartiteObservables &obs) {
    return evaluate_one_to_two(state, obs.a, obs.b, obs.c);
}

std::vector<CriterionReport> evaluate_two_to_one(const DensityOperator &state, const TripartiteObservables &obs) {
    return evaluate_two_to_one(state, obs.a, obs.b, obs.c);
}

CriterionReport evaluate_criterion(const DensityOperator &state, CriterionId id, const TripartiteObservables &obs) {
    switch (id) {
        case CriterionId::BipartiteMuf:
            throw Error(ErrorCode::BadArity, "MUF is a bipartite criterion");
        case CriterionId::TwoToOneT1:
        case CriterionId::TwoToOneT2A:
        case CriterionId::TwoToOneT2B:
        case CriterionId::TwoToOneTsum: {
            const auto reports = evaluate_two_to_one(state, obs);
            return find_report(reports, id);
        }
        default: {
            const auto reports = evaluate_one_to_two(state, obs);
            return find_report(reports, id);
        }
    }
}

const CriterionReport &find_report(std::span<const CriterionReport> reports, CriterionId id) {
    for (const auto &r : reports) {
        if (r.id == id) return r;
    }
    throw Error(ErrorCode::EmptyInput, std::string("no report for criterion ") + std::string(to_string(id)));
}

Classification classify(std::span<const CriterionReport> reports) {
    if (reports.empty()) throw Error(ErrorCode::EmptyInput, "no reports to classify");
    Classification best{Verdict::NoDetection, std::nullopt};
    for (const auto &r : reports) {
        if (static_cast<int>(r.verdict) > static_cast<int>(best.verdict)) {
            best = {r.verdict, r.id};
        }
    }
    return best;
}

std::string reports_to_csv(std::span<const CriterionReport> reports) {
    std::ostringstream out;
    out << "id,lhs,steering_bound,gms_bound,verdict\n" << std::setprecision(12);
    for (const auto &r : reports) {
        out << to_string(r.id) << ',' << r.lhs << ',';
        write_optional(out, r.steering_bound);
        out << ',';
        write_optional(out, r.gms_bound);
        out << ',' << to_string(r.verdict) << '\n';
    }
    return out.str();
}

}  // namespace steer
