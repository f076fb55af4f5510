#include "steer/observables.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "steer/error.hpp"

using namespace steer;

namespace {

Observable random_observable(std::size_t d, std::mt19937_64 &rng) {
    // Orthonormal columns from the QR factor of a complex Gaussian matrix.
    std::normal_distribution<double> normal;
    const auto n = static_cast<Eigen::Index>(d);
    Matrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    Eigen::HouseholderQR<Matrix> qr(g);
    return Observable(qr.householderQ() * Matrix::Identity(n, n));
}

}  // namespace

TEST(observables, pauli_bases) {
    EXPECT_LT((pauli_z().basis() - Matrix::Identity(2, 2)).norm(), 1e-15);
    const double s = 1.0 / std::sqrt(2.0);
    const Matrix x = pauli_x().basis();
    EXPECT_NEAR(x(0, 0).real(), s, 1e-15);
    EXPECT_NEAR(x(1, 0).real(), s, 1e-15);
    EXPECT_NEAR(x(0, 1).real(), s, 1e-15);
    EXPECT_NEAR(x(1, 1).real(), -s, 1e-15);
}

TEST(observables, shift_basis_entries_have_equal_modulus) {
    const Observable shift = shift_basis(3);
    for (Eigen::Index i = 0; i < 3; ++i)
        for (Eigen::Index j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(shift.basis()(i, j)), 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(observables, rejects_bad_bases) {
    Matrix bad(2, 2);
    bad << 1, 1, 0, 1;
    EXPECT_THROW(Observable{bad}, Error);
    EXPECT_THROW(clock_basis(1), Error);
    EXPECT_THROW(shift_basis(0), Error);
    EXPECT_THROW(builtin_observable("pauliX", 3), Error);
    EXPECT_THROW(builtin_observable("sigmaY", 2), Error);
}

TEST(mub_overlap, known_values) {
    EXPECT_NEAR(mub_overlap(pauli_x(), pauli_z()), 0.5, 1e-12);
    EXPECT_NEAR(mub_overlap(pauli_x(), pauli_x()), 1.0, 1e-12);
    EXPECT_NEAR(mub_overlap(shift_basis(3), shift_basis(3)), 1.0, 1e-12);
    EXPECT_NEAR(oracle::max_overlap(clock_basis(3).basis(), shift_basis(3).basis()), 1.0 / 3.0, 1e-12);
    EXPECT_NEAR(mub_overlap(clock_basis(3), shift_basis(3)), 1.0 / 3.0, 1e-12);
}

TEST(mub_overlap, dimension_mismatch) {
    try {
        mub_overlap(pauli_x(), shift_basis(3));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(mub_overlap, symmetric_and_bounded) {
    std::mt19937_64 rng(17);
    for (std::size_t d : {2u, 3u, 4u, 5u}) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto x = random_observable(d, rng);
            const auto z = random_observable(d, rng);
            const double a = mub_overlap(x, z);
            EXPECT_NEAR(a, mub_overlap(z, x), 1e-12);
            EXPECT_NEAR(a, oracle::max_overlap(x.basis(), z.basis()), 1e-12);
            EXPECT_GE(a, 1.0 / static_cast<double>(d) - 1e-12);
            EXPECT_LE(a, 1.0 + 1e-12);
        }
        // alpha = 1/d exactly for the mutually unbiased pair, checked entrywise.
        const Matrix overlaps = shift_basis(d).basis().adjoint() * clock_basis(d).basis();
        EXPECT_NEAR(overlaps.cwiseAbs2().maxCoeff(), 1.0 / static_cast<double>(d), 1e-12);
        EXPECT_NEAR(overlaps.cwiseAbs2().minCoeff(), 1.0 / static_cast<double>(d), 1e-12);
    }
}

TEST(composite_overlap, qubit_pairs) {
    const auto c = composite_overlap(pauli_pair(), pauli_pair());
    EXPECT_NEAR(c.alpha_bc, 0.25, 1e-15);
    EXPECT_NEAR(c.alpha_min, 0.5, 1e-15);

    const ObservablePair same(pauli_z(), pauli_z());
    EXPECT_NEAR(same.alpha(), 1.0, 1e-15);
    EXPECT_NEAR(composite_overlap(same, pauli_pair()).alpha_bc, 0.5, 1e-15);
}

TEST(composite_overlap, equals_exhaustive_tensor_basis_maximum) {
    std::mt19937_64 rng(23);
    for (auto [db, dc] : {std::pair{2u, 2u}, std::pair{2u, 3u}, std::pair{3u, 3u}}) {
        for (int trial = 0; trial < 15; ++trial) {
            const ObservablePair pb(random_observable(db, rng), random_observable(db, rng));
            const ObservablePair pc(random_observable(dc, rng), random_observable(dc, rng));
            const double brute = oracle::max_overlap(oracle::kron(pb.first().basis(), pc.first().basis()),
                                                     oracle::kron(pb.second().basis(), pc.second().basis()));
            const auto c = composite_overlap(pb, pc);
            EXPECT_NEAR(c.alpha_bc, brute, 1e-12);
            EXPECT_GE(c.alpha_min + 1e-12, c.alpha_bc);
        }
    }
}
