#include "steer/distributions.hpp"

#include <array>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "steer/error.hpp"

using namespace steer;

namespace {

const PartyLayout kThreeQubits({2, 2, 2});

void expect_matches(const JointDistribution &dist, const std::vector<double> &expected, double tol) {
    ASSERT_EQ(dist.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(dist.probabilities()[i], expected[i], tol) << i;
}

}  // namespace

TEST(joint_distribution, ghz_in_z_basis) {
    const auto rho = ghz_state().projector();
    const auto dist = joint_distribution(rho, {pauli_z(), pauli_z(), pauli_z()});
    const std::vector<Matrix> bases(3, pauli_z().basis());
    const auto oracle_probs = oracle::projector_expectations(rho.matrix(), bases);
    expect_matches(dist, oracle_probs, 1e-14);
    expect_matches(dist, {0.5, 0, 0, 0, 0, 0, 0, 0.5}, 1e-14);
}

TEST(joint_distribution, ghz_in_x_basis_is_even_parity_uniform) {
    const auto rho = ghz_state().projector();
    const auto dist = joint_distribution(rho, {pauli_x(), pauli_x(), pauli_x()});
    const std::vector<Matrix> bases(3, pauli_x().basis());
    expect_matches(dist, oracle::projector_expectations(rho.matrix(), bases), 1e-14);
    // Outcome 1 is the -1 eigenvector; only even numbers of minus signs survive.
    expect_matches(dist, {0.25, 0, 0, 0.25, 0, 0.25, 0.25, 0}, 1e-14);
}

TEST(joint_distribution, maximally_mixed_is_uniform) {
    const auto rho = DensityOperator::maximally_mixed(kThreeQubits);
    for (const auto &o : {pauli_x(), pauli_z()}) {
        expect_matches(joint_distribution(rho, {o, pauli_x(), o}), std::vector<double>(8, 0.125), 1e-15);
    }
}

TEST(joint_distribution, matches_projector_oracle_on_random_states) {
    std::mt19937_64 rng(31);
    const PartyLayout layout({2, 3, 2});
    for (int trial = 0; trial < 20; ++trial) {
        const DensityOperator rho(oracle::random_density(12, rng), layout);
        const std::array<Observable, 3> obs = {pauli_x(), shift_basis(3), pauli_z()};
        const auto dist = joint_distribution(rho, obs);
        expect_matches(dist, oracle::projector_expectations(rho.matrix(), {obs[0].basis(), obs[1].basis(), obs[2].basis()}),
                       1e-13);
    }
}

TEST(joint_distribution, dimension_errors) {
    const auto rho = DensityOperator::maximally_mixed(kThreeQubits);
    EXPECT_THROW(joint_distribution(rho, {pauli_z(), pauli_z()}), Error);
    try {
        joint_distribution(rho, {pauli_z(), shift_basis(3), pauli_z()});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(joint_distribution, rejects_invalid_tables) {
    EXPECT_THROW(JointDistribution({0.5, 0.6}, {2}), Error);
    EXPECT_THROW(JointDistribution({1.1, -0.1}, {2}), Error);
    EXPECT_THROW(JointDistribution({0.5, 0.5}, {3}), Error);
    // Roundoff-sized negatives are clipped.
    const JointDistribution ok({1.0 + 1e-13, -1e-13}, {2});
    EXPECT_EQ(ok.probabilities()[1], 0.0);
}

TEST(marginalize, examples) {
    const JointDistribution uniform(std::vector<double>(8, 0.125), {2, 2, 2});
    const auto a = marginalize(uniform, {0});
    EXPECT_EQ(a.parties(), std::vector<std::size_t>{0});
    expect_matches(a, {0.5, 0.5}, 1e-15);

    const auto ghz_z = joint_distribution(ghz_state().projector(), {pauli_z(), pauli_z(), pauli_z()});
    const auto bc = marginalize(ghz_z, {1, 2});
    EXPECT_EQ(bc.parties(), (std::vector<std::size_t>{1, 2}));
    expect_matches(bc, {0.5, 0, 0, 0.5}, 1e-15);

    const auto all = marginalize(ghz_z, {2, 0, 1});
    expect_matches(all, ghz_z.probabilities(), 0.0);
    EXPECT_EQ(all.parties(), ghz_z.parties());
}

TEST(marginalize, keeps_labels_through_nesting) {
    std::mt19937_64 rng(2);
    const DensityOperator rho(oracle::random_density(8, rng), kThreeQubits);
    const auto dist = joint_distribution(rho, {pauli_x(), pauli_z(), pauli_x()});
    const auto direct = marginalize(dist, {2});
    const auto nested = marginalize(marginalize(dist, {1, 2}), {2});
    expect_matches(nested, direct.probabilities(), 1e-15);
    EXPECT_THROW(marginalize(marginalize(dist, {1, 2}), {0}), Error);
    try {
        marginalize(dist, std::span<const std::size_t>{});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyKeepSet);
    }
}

TEST(joint_distribution, commutes_with_partial_trace) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityOperator rho(oracle::random_density(8, rng), kThreeQubits);
        const auto measured = marginalize(joint_distribution(rho, {pauli_x(), pauli_z(), pauli_x()}), {0});
        const auto reduced = joint_distribution(partial_trace(rho, {0}), {pauli_x()});
        expect_matches(measured, reduced.probabilities(), 1e-13);
    }
}

TEST(joint_distribution, product_states_factorize) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const std::array<DensityOperator, 3> parts = {
            DensityOperator(oracle::random_density(2, rng), PartyLayout({2})),
            DensityOperator(oracle::random_density(2, rng), PartyLayout({2})),
            DensityOperator(oracle::random_density(2, rng), PartyLayout({2}))};
        const auto rho = tensor_product(std::span<const DensityOperator>(parts));
        const std::array<Observable, 3> obs = {pauli_x(), pauli_z(), pauli_x()};
        const auto joint = joint_distribution(rho, obs);
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b)
                for (std::size_t c = 0; c < 2; ++c) {
                    const double expected = joint_distribution(parts[0], {obs[0]}).at({a}) *
                                            joint_distribution(parts[1], {obs[1]}).at({b}) *
                                            joint_distribution(parts[2], {obs[2]}).at({c});
                    EXPECT_NEAR(joint.at({a, b, c}), expected, 1e-12);
                }
    }
}

TEST(joint_distribution, symmetric_states_give_symmetric_tensors) {
    for (const auto &rho : {white_noise_mix(w_state(), 0.7), ghz_state().projector()}) {
        for (const auto &o : {pauli_x(), pauli_z()}) {
            const auto dist = joint_distribution(rho, {o, o, o});
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b)
                    for (std::size_t c = 0; c < 2; ++c) {
                        EXPECT_NEAR(dist.at({a, b, c}), dist.at({b, a, c}), 1e-14);
                        EXPECT_NEAR(dist.at({a, b, c}), dist.at({c, b, a}), 1e-14);
                        EXPECT_NEAR(dist.at({a, b, c}), dist.at({a, c, b}), 1e-14);
                    }
        }
    }
}

TEST(distribution_csv, rows) {
    const auto dist = joint_distribution(ghz_state().projector(), {pauli_z(), pauli_z(), pauli_z()});
    const std::string csv = to_csv(dist);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "a,b,c,probability");
    EXPECT_NE(csv.find("\n0,0,0,0.5\n"), std::string::npos);
    EXPECT_NE(csv.find("\n1,1,1,0.5\n"), std::string::npos);
}
