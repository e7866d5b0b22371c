// Copyright 2026 The Everett Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "everett/schmidt.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "everett/error.hpp"
#include "test_support.hpp"

using namespace everett;

namespace {

StateVector bell() {
    const std::vector<Complex> amps = {1.0, 0.0, 0.0, 1.0};
    return make_state(amps, {2, 2});
}

void expect_valid(const SchmidtDecomposition &dec) {
    double sum = 0.0;
    for (double l : dec.lambdas) sum += l;
    EXPECT_NEAR(sum, 1.0, 1e-10);
    EXPECT_LE(dec.rank, std::min(dec.split.dim_i, dec.split.dim_ii));
    EXPECT_EQ(dec.rank, dec.lambdas.size());
    for (std::size_t m = 0; m < dec.rank; ++m) {
        for (std::size_t n = 0; n < dec.rank; ++n) {
            const double delta = m == n ? 1.0 : 0.0;
            EXPECT_NEAR(std::abs(inner(dec.left[m], dec.left[n]) - delta), 0.0, 1e-10);
            EXPECT_NEAR(std::abs(inner(dec.right[m], dec.right[n]) - delta), 0.0, 1e-10);
        }
    }
}

}  // namespace

TEST(SchmidtDecompose, ProductState) {
    const StateVector psi = tensor(basis_state(2, 0), basis_state(2, 0));
    const SchmidtDecomposition dec = schmidt_decompose(psi, {2, 2});
    ASSERT_EQ(dec.rank, 1u);
    EXPECT_NEAR(dec.lambdas[0], 1.0, 1e-15);
    expect_valid(dec);
}

TEST(SchmidtDecompose, BellState) {
    const SchmidtDecomposition dec = schmidt_decompose(bell(), {2, 2});
    ASSERT_EQ(dec.rank, 2u);
    EXPECT_NEAR(dec.lambdas[0], 0.5, 1e-15);
    EXPECT_NEAR(dec.lambdas[1], 0.5, 1e-15);
    expect_valid(dec);
    // Canonical degenerate pairing: phi_0 = |0>, phi_1 = |1>.
    EXPECT_NEAR(std::abs(dec.left[0][0] - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(dec.left[1][1] - 1.0), 0.0, 1e-12);
    EXPECT_LT(distance_up_to_phase(reconstruct(dec), bell()), 1e-10);
}

TEST(SchmidtDecompose, RandomFourBySix) {
    const StateVector psi = oracle::random_state({4, 6}, 2024);
    const SchmidtDecomposition dec = schmidt_decompose(psi, {4, 6});
    EXPECT_LE(dec.rank, 4u);
    expect_valid(dec);
    EXPECT_LT(distance_up_to_phase(reconstruct(dec), psi), 1e-10);
    // Coefficients agree with the SVD route.
    const auto svd = oracle::svd_schmidt_coefficients(psi, 4, 6);
    for (std::size_t n = 0; n < dec.rank; ++n) EXPECT_NEAR(dec.lambdas[n], svd[n], 1e-12);
}

TEST(SchmidtDecompose, ReconstructsWithoutPhaseFreedom) {
    // Pairing through the state fixes relative phases, so the reconstruction
    // equals psi exactly, not just up to a global phase.
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const StateVector psi = oracle::random_state({3, 5}, seed);
        const StateVector back = reconstruct(schmidt_decompose(psi, {3, 5}));
        EXPECT_LT((back.amplitudes() - psi.amplitudes()).norm(), 1e-10);
    }
}

TEST(SchmidtDecompose, RightVectorsDiagonalizeRhoII) {
    const StateVector psi = oracle::random_state({3, 4}, 8);
    const SchmidtDecomposition dec = schmidt_decompose(psi, {3, 4});
    const Matrix rho2 = partial_trace(psi, {3, 4}, Subsystem::II).entries();
    for (std::size_t n = 0; n < dec.rank; ++n) {
        const Vector &chi = dec.right[n].amplitudes();
        EXPECT_LT((rho2 * chi - dec.lambdas[n] * chi).norm(), 1e-10);
    }
}

TEST(SchmidtDecompose, InconsistentSplit) {
    EXPECT_THROW(schmidt_decompose(bell(), {2, 3}), Error);
}

TEST(SchmidtRank, Examples) {
    EXPECT_EQ(schmidt_rank(schmidt_decompose(tensor(basis_state(3, 1), basis_state(2, 0)), {3, 2})), 1u);
    EXPECT_EQ(schmidt_rank(schmidt_decompose(bell(), {2, 2})), 2u);
}

TEST(SchmidtRank, MatchesDualSideEigensolve) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const StateVector psi = oracle::random_state({4, 6}, seed);
        const auto rho2 = oracle::direct_eigenvalues_desc(partial_trace(psi, {4, 6}, Subsystem::II).entries());
        EXPECT_EQ(schmidt_rank(schmidt_decompose(psi, {4, 6})), oracle::count_above(rho2, tol::rank));
    }
    // A rank-2 state embedded in 4x6.
    Vector v = Vector::Zero(24);
    v[0] = 0.8;
    v[1 * 6 + 3] = 0.6;
    const StateVector psi = make_state(v, {4, 6});
    const auto rho2 = oracle::direct_eigenvalues_desc(partial_trace(psi, {4, 6}, Subsystem::II).entries());
    EXPECT_EQ(schmidt_rank(schmidt_decompose(psi, {4, 6})), oracle::count_above(rho2, tol::rank));
    EXPECT_EQ(schmidt_rank(schmidt_decompose(psi, {4, 6})), 2u);
}

TEST(SpectraGap, Examples) {
    EXPECT_LT(spectra_gap(bell(), {2, 2}), 1e-12);
    EXPECT_LT(spectra_gap(tensor(basis_state(2, 1), basis_state(3, 2)), {2, 3}), 1e-12);
    EXPECT_THROW(spectra_gap(bell(), {4, 2}), Error);
}

TEST(SpectraGap, RandomSweep) {
    const std::vector<BipartiteSplit> splits = {{2, 2}, {2, 8}, {8, 2}, {3, 5}, {8, 8}};
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const BipartiteSplit split = splits[seed % splits.size()];
        worst = std::max(worst, spectra_gap(oracle::random_state({split.dim_i, split.dim_ii}, seed), split));
    }
    EXPECT_LT(worst, 1e-10);
}

TEST(EntanglementEntropy, Examples) {
    EXPECT_EQ(entanglement_entropy(schmidt_decompose(tensor(basis_state(2, 0), basis_state(2, 1)), {2, 2})), 0.0);
    EXPECT_NEAR(entanglement_entropy(schmidt_decompose(bell(), {2, 2})), std::numbers::ln2, 1e-12);

    // sum_i (1/2)|i>|i> over i < 4 on a 4x6 split.
    Vector v = Vector::Zero(24);
    for (int i = 0; i < 4; ++i) v[i * 6 + i] = 0.5;
    const StateVector uniform = make_state(v, {4, 6});
    EXPECT_NEAR(entanglement_entropy(schmidt_decompose(uniform, {4, 6})), std::log(4.0), 1e-10);
}

TEST(EntanglementEntropy, Bounds) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t a = 1 + seed % 6;
        const std::size_t b = 1 + (seed / 6) % 6;
        const SchmidtDecomposition dec = schmidt_decompose(oracle::random_state({a, b}, seed), {a, b});
        const double s = entanglement_entropy(dec);
        EXPECT_GE(s, 0.0);
        EXPECT_LE(s, std::log(static_cast<double>(std::min(a, b))) + 1e-10);
        EXPECT_EQ(s == 0.0, dec.rank == 1);
    }
}

TEST(SchmidtProperties, GlobalPhaseInvariance) {
    const StateVector psi = oracle::random_state({3, 4}, 31);
    const StateVector rotated = make_state(Vector(std::polar(1.0, 0.7) * psi.amplitudes()), {3, 4});
    const SchmidtDecomposition a = schmidt_decompose(psi, {3, 4});
    const SchmidtDecomposition b = schmidt_decompose(rotated, {3, 4});
    ASSERT_EQ(a.rank, b.rank);
    for (std::size_t n = 0; n < a.rank; ++n) {
        EXPECT_NEAR(a.lambdas[n], b.lambdas[n], 1e-12);
        // Left vectors are phase-canonical; the phase moves to the right vector.
        EXPECT_LT((a.left[n].amplitudes() - b.left[n].amplitudes()).norm(), 1e-10);
        EXPECT_LT((std::polar(1.0, 0.7) * a.right[n].amplitudes() - b.right[n].amplitudes()).norm(), 1e-10);
    }
}

TEST(SchmidtProperties, LocalUnitaryInvariance) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const StateVector psi = oracle::random_state({3, 5}, seed);
        const UnitaryOperator local =
            make_unitary(kron(haar_random_unitary(3, seed + 100).matrix(), haar_random_unitary(5, seed + 200).matrix()));
        const SchmidtDecomposition a = schmidt_decompose(psi, {3, 5});
        const SchmidtDecomposition b = schmidt_decompose(apply_unitary(local, psi), {3, 5});
        ASSERT_EQ(a.rank, b.rank);
        for (std::size_t n = 0; n < a.rank; ++n) EXPECT_NEAR(a.lambdas[n], b.lambdas[n], 1e-10);
    }
}

TEST(SchmidtProperties, RankOneIffFactorized) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const StateVector product_state = tensor(haar_random_state(3, seed), haar_random_state(4, seed + 50));
        const SchmidtDecomposition dec = schmidt_decompose(product_state, {3, 4});
        ASSERT_EQ(dec.rank, 1u);
        EXPECT_LT(distance_up_to_phase(tensor(dec.left[0], dec.right[0]), product_state), 1e-10);

        const StateVector entangled = oracle::random_state({3, 4}, seed);
        const SchmidtDecomposition dec2 = schmidt_decompose(entangled, {3, 4});
        EXPECT_GT(dec2.rank, 1u);
        EXPECT_GT(distance_up_to_phase(tensor(dec2.left[0], dec2.right[0]), entangled), 1e-3);
    }
}

TEST(Reconstruct, RenormalizesAfterTruncation) {
    // A tiny third coefficient below the rank threshold gets dropped.
    Vector v = Vector::Zero(9);
    v[0] = 0.8;
    v[4] = 0.6;
    v[8] = 1e-6;  // lambda = 1e-12 < tol::rank
    const StateVector psi = make_state(v, {3, 3});
    const SchmidtDecomposition dec = schmidt_decompose(psi, {3, 3});
    EXPECT_EQ(dec.rank, 2u);
    const StateVector back = reconstruct(dec);
    EXPECT_NEAR(back.amplitudes().norm(), 1.0, 1e-12);
    EXPECT_LT(distance_up_to_phase(back, psi), 1e-5);
}
