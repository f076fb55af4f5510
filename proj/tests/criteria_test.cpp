#include "steer/criteria.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "steer/error.hpp"

using namespace steer;

namespace {

const PartyLayout kThreeQubits({2, 2, 2});

/// Criterion values recomputed from projector expectations and per-slice entropies.
struct OracleValues {
    double s1 = 0, s2 = 0, s3 = 0, cb = 0, cc = 0, t1 = 0, t2a = 0, t2b = 0;
};

OracleValues oracle_values(const Matrix &rho) {
    const std::vector<std::size_t> dims = {2, 2, 2};
    OracleValues v;
    for (const Matrix &basis : {pauli_x().basis(), pauli_z().basis()}) {
        const auto p = oracle::projector_expectations(rho, {basis, basis, basis});
        v.s1 += oracle::conditional(p, dims, {1, 2}, {0});
        v.s2 += oracle::conditional(p, dims, {1}, {0});
        v.s3 += oracle::conditional(p, dims, {2}, {0});
        v.cb += oracle::conditional(p, dims, {1}, {0, 2});
        v.cc += oracle::conditional(p, dims, {2}, {0, 1});
        v.t1 += oracle::conditional(p, dims, {2}, {0, 1});
        v.t2a += oracle::conditional(p, dims, {2}, {0});
        v.t2b += oracle::conditional(p, dims, {2}, {1});
    }
    return v;
}

double lhs_of(const std::vector<CriterionReport> &reports, CriterionId id) { return find_report(reports, id).lhs; }

Verdict verdict_of(const std::vector<CriterionReport> &reports, CriterionId id) {
    return find_report(reports, id).verdict;
}

DensityOperator random_qubit(std::mt19937_64 &rng) {
    return DensityOperator(oracle::random_density(2, rng), PartyLayout({2}));
}

}  // namespace

TEST(one_to_two, standard_ghz) {
    const auto rho = ghz_state().projector();
    const auto reports = evaluate_one_to_two(rho, pauli_observables());
    const auto expected = oracle_values(rho.matrix());
    EXPECT_NEAR(expected.s1, 1.0, 1e-12);
    EXPECT_NEAR(expected.cb, 0.0, 1e-12);

    EXPECT_NEAR(lhs_of(reports, CriterionId::OneToTwoS1), expected.s1, 1e-12);
    EXPECT_NEAR(lhs_of(reports, CriterionId::OneToTwoCB), expected.cb, 1e-12);
    EXPECT_NEAR(lhs_of(reports, CriterionId::OneToTwoCC), expected.cc, 1e-12);
    EXPECT_NEAR(lhs_of(reports, CriterionId::OneToTwoA), 1.0, 1e-12);
    EXPECT_EQ(verdict_of(reports, CriterionId::OneToTwoS1), Verdict::SteeringDetected);
    EXPECT_EQ(verdict_of(reports, CriterionId::OneToTwoA), Verdict::GmsDetected);
    const auto overall = classify(reports);
    EXPECT_EQ(overall.verdict, Verdict::GmsDetected);
    EXPECT_EQ(overall.criterion, CriterionId::OneToTwoA);
}

TEST(one_to_two, maximally_mixed) {
    const auto reports = evaluate_one_to_two(DensityOperator::maximally_mixed(kThreeQubits), pauli_observables());
    EXPECT_NEAR(lhs_of(reports, CriterionId::OneToTwoS1), 4.0, 1e-12);
    EXPECT_NEAR(lhs_of(reports, CriterionId::OneToTwoS2), 2.0, 1e-12);
    EXPECT_NEAR(lhs_of(reports, CriterionId::OneToTwoS3), 2.0, 1e-12);
    EXPECT_NEAR(lhs_of(reports, CriterionId::OneToTwoCB), 2.0, 1e-12);
    EXPECT_NEAR(lhs_of(reports, CriterionId::OneToTwoCC), 2.0, 1e-12);
    EXPECT_NEAR(lhs_of(reports, CriterionId::OneToTwoA), 8.0, 1e-12);
    for (const auto &r : reports) EXPECT_EQ(r.verdict, Verdict::NoDetection) << to_string(r.id);
    EXPECT_EQ(classify(reports).verdict, Verdict::NoDetection);
    EXPECT_FALSE(classify(reports).criterion.has_value());
}

TEST(one_to_two, ghz_family_marginal_criteria_never_fire) {
    for (int i = 0; i <= 100; ++i) {
        const double a = i / 100.0;
        const auto reports = evaluate_one_to_two(ghz_family(a).projector(), pauli_observables());
        EXPECT_GE(lhs_of(reports, CriterionId::OneToTwoS2), 1.0 - 1e-12) << a;
        EXPECT_GE(lhs_of(reports, CriterionId::OneToTwoS3), 1.0 - 1e-12) << a;
    }
}

TEST(one_to_two, matches_brute_force_oracle) {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityOperator rho(oracle::random_density(8, rng), kThreeQubits);
        const auto v = oracle_values(rho.matrix());
        const auto one = evaluate_one_to_two(rho, pauli_observables());
        const auto two = evaluate_two_to_one(rho, pauli_observables());
        EXPECT_NEAR(lhs_of(one, CriterionId::OneToTwoS1), v.s1, 1e-12);
        EXPECT_NEAR(lhs_of(one, CriterionId::OneToTwoS2), v.s2, 1e-12);
        EXPECT_NEAR(lhs_of(one, CriterionId::OneToTwoS3), v.s3, 1e-12);
        EXPECT_NEAR(lhs_of(one, CriterionId::OneToTwoCB), v.cb, 1e-12);
        EXPECT_NEAR(lhs_of(one, CriterionId::OneToTwoCC), v.cc, 1e-12);
        EXPECT_NEAR(lhs_of(two, CriterionId::TwoToOneT1), v.t1, 1e-12);
        EXPECT_NEAR(lhs_of(two, CriterionId::TwoToOneT2A), v.t2a, 1e-12);
        EXPECT_NEAR(lhs_of(two, CriterionId::TwoToOneT2B), v.t2b, 1e-12);
        EXPECT_EQ(lhs_of(one, CriterionId::OneToTwoA),
                  lhs_of(one, CriterionId::OneToTwoS1) + lhs_of(one, CriterionId::OneToTwoCB) +
                      lhs_of(one, CriterionId::OneToTwoCC));
        EXPECT_EQ(lhs_of(two, CriterionId::TwoToOneTsum),
                  lhs_of(two, CriterionId::TwoToOneT2A) + lhs_of(two, CriterionId::TwoToOneT2B));
    }
}

TEST(two_to_one, examples) {
    const auto ghz = evaluate_two_to_one(ghz_state().projector(), pauli_observables());
    EXPECT_NEAR(lhs_of(ghz, CriterionId::TwoToOneT1), 0.0, 1e-12);
    EXPECT_EQ(verdict_of(ghz, CriterionId::TwoToOneT1), Verdict::SteeringDetected);

    const auto mixed = evaluate_two_to_one(DensityOperator::maximally_mixed(kThreeQubits), pauli_observables());
    EXPECT_NEAR(lhs_of(mixed, CriterionId::TwoToOneT1), 2.0, 1e-12);
    EXPECT_NEAR(lhs_of(mixed, CriterionId::TwoToOneTsum), 4.0, 1e-12);
    for (const auto &r : mixed) EXPECT_EQ(r.verdict, Verdict::NoDetection);

    // |000>: Z outcomes are certain, X outcomes on C are uniform and independent of A.
    const auto product = evaluate_two_to_one(basis_state(kThreeQubits, {0, 0, 0}).projector(), pauli_observables());
    EXPECT_NEAR(lhs_of(product, CriterionId::TwoToOneT2A), 1.0, 1e-12);
    EXPECT_EQ(verdict_of(product, CriterionId::TwoToOneT2A), Verdict::NoDetection);
}

TEST(bipartite, examples) {
    const auto bell = evaluate_bipartite(bell_state().projector(), pauli_pair(), pauli_pair());
    EXPECT_NEAR(bell.lhs, 0.0, 1e-12);
    EXPECT_EQ(bell.verdict, Verdict::SteeringDetected);

    const auto mixed = evaluate_bipartite(DensityOperator::maximally_mixed(PartyLayout({2, 2})), pauli_pair(), pauli_pair());
    EXPECT_NEAR(mixed.lhs, 2.0, 1e-12);
    EXPECT_EQ(mixed.verdict, Verdict::NoDetection);

    std::mt19937_64 rng(5);
    const std::array<DensityOperator, 2> parts = {random_qubit(rng), basis_state(PartyLayout({2}), {0}).projector()};
    const auto saturated = evaluate_bipartite(tensor_product(std::span<const DensityOperator>(parts)), pauli_pair(),
                                              pauli_pair());
    EXPECT_NEAR(saturated.lhs, 1.0, 1e-12);
    EXPECT_NEAR(*saturated.steering_bound, 1.0, 1e-15);
    EXPECT_EQ(saturated.verdict, Verdict::NoDetection);
    EXPECT_FALSE(saturated.gms_bound.has_value());
}

TEST(criteria, arity_errors) {
    const auto two = DensityOperator::maximally_mixed(PartyLayout({2, 2}));
    const auto three = DensityOperator::maximally_mixed(kThreeQubits);
    for (auto fn : std::vector<std::function<void()>>{
             [&] { evaluate_one_to_two(two, pauli_observables()); },
             [&] { evaluate_two_to_one(two, pauli_observables()); },
             [&] { evaluate_bipartite(three, pauli_pair(), pauli_pair()); }}) {
        try {
            fn();
            FAIL();
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), ErrorCode::BadArity);
        }
    }
}

TEST(criteria, qubit_bound_specialization) {
    const auto rho = DensityOperator::maximally_mixed(kThreeQubits);
    const auto one = evaluate_one_to_two(rho, pauli_observables());
    const auto two = evaluate_two_to_one(rho, pauli_observables());
    auto bounds = [](const CriterionReport &r) { return std::pair{r.steering_bound, r.gms_bound}; };
    EXPECT_EQ(bounds(find_report(one, CriterionId::OneToTwoS1)), (std::pair<std::optional<double>, std::optional<double>>{2.0, 1.0}));
    for (CriterionId id : {CriterionId::OneToTwoS2, CriterionId::OneToTwoS3, CriterionId::OneToTwoCB, CriterionId::OneToTwoCC}) {
        EXPECT_EQ(find_report(one, id).steering_bound, 1.0);
        EXPECT_FALSE(find_report(one, id).gms_bound.has_value());
    }
    const auto &a = find_report(one, CriterionId::OneToTwoA);
    EXPECT_EQ(a.steering_bound, 4.0);
    EXPECT_EQ(a.gms_bound, 2.0);
    EXPECT_EQ(a.quoted_bound, 4.0);
    for (CriterionId id : {CriterionId::TwoToOneT1, CriterionId::TwoToOneT2A, CriterionId::TwoToOneT2B}) {
        EXPECT_EQ(find_report(two, id).steering_bound, 1.0);
    }
    EXPECT_EQ(bounds(find_report(two, CriterionId::TwoToOneTsum)), (std::pair<std::optional<double>, std::optional<double>>{2.0, 1.0}));
}

TEST(criteria, qutrit_bounds_use_overlaps) {
    const PartyLayout qutrits({3, 3, 3});
    const TripartiteObservables obs{mub_pair(3), mub_pair(3), mub_pair(3)};
    const auto one = evaluate_one_to_two(DensityOperator::maximally_mixed(qutrits), obs);
    const double log3 = std::log2(3.0);
    EXPECT_NEAR(*find_report(one, CriterionId::OneToTwoS1).steering_bound, 2 * log3, 1e-12);
    EXPECT_NEAR(*find_report(one, CriterionId::OneToTwoS1).gms_bound, log3, 1e-12);
    EXPECT_NEAR(*find_report(one, CriterionId::OneToTwoA).steering_bound, 4 * log3, 1e-12);
    EXPECT_NEAR(find_report(one, CriterionId::OneToTwoS1).lhs, 4 * log3, 1e-12);
}

TEST(criteria, gms_bound_never_exceeds_steering_bound) {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityOperator rho(oracle::random_density(8, rng), kThreeQubits);
        auto reports = evaluate_one_to_two(rho, pauli_observables());
        const auto two = evaluate_two_to_one(rho, pauli_observables());
        reports.insert(reports.end(), two.begin(), two.end());
        for (const auto &r : reports) {
            EXPECT_GE(r.lhs, 0.0);
            if (r.gms_bound && r.steering_bound) EXPECT_LE(*r.gms_bound, *r.steering_bound);
            if (r.verdict == Verdict::GmsDetected) EXPECT_TRUE(r.violates(BoundKind::Steering));
            if (r.verdict == Verdict::SteeringDetected) EXPECT_TRUE(r.violates(BoundKind::Steering));
        }
    }
}

TEST(criteria, product_states_never_detected) {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 500; ++trial) {
        const std::array<DensityOperator, 3> parts = {random_qubit(rng), random_qubit(rng), random_qubit(rng)};
        const auto rho = tensor_product(std::span<const DensityOperator>(parts));
        for (const auto &r : evaluate_one_to_two(rho, pauli_observables())) {
            ASSERT_EQ(r.verdict, Verdict::NoDetection) << to_string(r.id) << " trial " << trial;
        }
        for (const auto &r : evaluate_two_to_one(rho, pauli_observables())) {
            ASSERT_EQ(r.verdict, Verdict::NoDetection) << to_string(r.id) << " trial " << trial;
        }
    }
}

TEST(criteria, invariant_under_phase_and_relabeling) {
    std::mt19937_64 rng(83);
    Matrix swap_cols(2, 2);
    swap_cols << 0, 1, 1, 0;
    const ObservablePair relabeled(Observable(pauli_x().basis() * swap_cols), Observable(pauli_z().basis() * swap_cols));
    for (int trial = 0; trial < 20; ++trial) {
        const Vector psi = oracle::random_pure(8, rng);
        const Complex phase = std::polar(1.0, 0.37 * trial);
        const auto base = evaluate_one_to_two(PureState(psi, kThreeQubits).projector(), pauli_observables());
        const auto phased = evaluate_one_to_two(PureState(phase * psi, kThreeQubits).projector(), pauli_observables());
        const auto relabel = evaluate_one_to_two(PureState(psi, kThreeQubits).projector(), pauli_pair(), relabeled, pauli_pair());
        for (std::size_t k = 0; k < base.size(); ++k) {
            EXPECT_NEAR(base[k].lhs, phased[k].lhs, 1e-12);
            EXPECT_NEAR(base[k].lhs, relabel[k].lhs, 1e-12);
        }
    }
}

TEST(classify, aggregation) {
    EXPECT_THROW(classify(std::vector<CriterionReport>{}), Error);
    std::vector<CriterionReport> reports = {
        {CriterionId::OneToTwoS1, 1.5, 2.0, 1.0, std::nullopt, Verdict::SteeringDetected},
        {CriterionId::OneToTwoA, 1.5, 4.0, 2.0, 4.0, Verdict::GmsDetected},
    };
    const auto c = classify(reports);
    EXPECT_EQ(c.verdict, Verdict::GmsDetected);
    EXPECT_EQ(c.criterion, CriterionId::OneToTwoA);
    reports.resize(1);
    EXPECT_EQ(classify(reports).criterion, CriterionId::OneToTwoS1);
}

TEST(criteria, strict_detection_slack) {
    EXPECT_EQ(judge(1.0 - 1e-10, 1.0, std::nullopt), Verdict::NoDetection);
    EXPECT_EQ(judge(1.0 - 1e-8, 1.0, std::nullopt), Verdict::SteeringDetected);
    EXPECT_EQ(judge(0.5, 2.0, 1.0), Verdict::GmsDetected);
    EXPECT_EQ(judge(1.0, 2.0, 1.0), Verdict::SteeringDetected);
}

TEST(criteria, names_round_trip) {
    for (CriterionId id : kAllCriteria) EXPECT_EQ(parse_criterion(to_string(id)), id);
    EXPECT_EQ(parse_criterion("C"), CriterionId::OneToTwoCB);
    EXPECT_FALSE(parse_criterion("S4").has_value());
}

TEST(criteria, csv_rows) {
    const auto csv = reports_to_csv(evaluate_one_to_two(ghz_state().projector(), pauli_observables()));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "id,lhs,steering_bound,gms_bound,verdict");
    EXPECT_NE(csv.find("\nS1,1,2,1,SteeringDetected\n"), std::string::npos) << csv;
    EXPECT_NE(csv.find("\nS2,1,1,,NoDetection\n"), std::string::npos) << csv;
    EXPECT_NE(csv.find("\nA,1,4,2,GmsDetected\n"), std::string::npos) << csv;
}
