// Copyright 2026 The nrqae Authors
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

#include <gtest/gtest.h>

#include "nrqae/noise.hpp"
#include "nrqae/quantum.hpp"
#include "test_util.hpp"

using namespace nrqae;
using namespace nrqae::testing;

namespace {

RealMatrix diag4(double a, double b, double c, double d) {
    RealMatrix m = RealMatrix::Zero(4, 4);
    m.diagonal() << a, b, c, d;
    return m;
}

// Applies a superoperator to a density matrix.
ComplexMatrix apply_channel(const ComplexMatrix &superop, const ComplexMatrix &rho) {
    return devectorize(superop * vectorize(rho));
}

}  // namespace

TEST(NoiseKind, StringsRoundTrip) {
    for (auto k : {NoiseKind::None, NoiseKind::Statistical, NoiseKind::AmplitudeDamping, NoiseKind::Pauli,
                   NoiseKind::Coherent, NoiseKind::Depolarizing}) {
        EXPECT_EQ(noise_kind_from_string(to_string(k)), k);
    }
    EXPECT_THROW(noise_kind_from_string("thermal"), std::invalid_argument);
}

TEST(PauliBasis, Orthonormal) {
    for (std::size_t q = 1; q <= 3; q++) {
        const ComplexMatrix b = pauli_basis(q);
        EXPECT_LT(max_abs_diff(b.adjoint() * b, identity(b.cols())), 1e-12);
    }
}

TEST(Noise, NoneIsIdentity) {
    for (std::size_t q = 1; q <= 3; q++) {
        const std::size_t d = std::size_t{1} << q;
        EXPECT_LT(max_abs_diff(noise_superop(NoiseSpec::none(), q), identity(d * d)), 1e-15);
    }
}

TEST(Noise, DepolarizingPtm) {
    const auto spec = NoiseSpec::of_kind(NoiseKind::Depolarizing);
    const RealMatrix ptm = superop_to_ptm(noise_superop(spec, 1), 1);
    EXPECT_LT((ptm - diag4(1, 0.6, 0.6, 0.6)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(avg_gate_fidelity(noise_superop(spec, 1), identity(4), 2), 0.8, 1e-12);
}

TEST(Noise, PauliPtmAndFidelity) {
    const auto spec = NoiseSpec::of_kind(NoiseKind::Pauli);
    const RealMatrix ptm = superop_to_ptm(noise_superop(spec, 1), 1);
    EXPECT_LT((ptm - diag4(1, 0.4, 0.2, 0.8)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(avg_gate_fidelity(noise_superop(spec, 1), identity(4), 2), 0.7333333333, 1e-9);
}

TEST(Noise, AmplitudeDampingMovesPopulationDown) {
    const auto spec = NoiseSpec::of_kind(NoiseKind::AmplitudeDamping);
    const ComplexMatrix n = noise_superop(spec, 1);
    const ComplexVector one = basis_state(1, 1);
    const ComplexMatrix out = apply_channel(n, one * one.adjoint());
    EXPECT_NEAR(out(0, 0).real(), 0.1, 1e-12);
    EXPECT_NEAR(out(1, 1).real(), 0.9, 1e-12);
    const ComplexVector zero = basis_state(1, 0);
    EXPECT_LT(max_abs_diff(apply_channel(n, zero * zero.adjoint()), zero * zero.adjoint()), 1e-12);
}

TEST(Noise, CoherentFidelity) {
    const auto spec = NoiseSpec::of_kind(NoiseKind::Coherent);
    const double f = avg_gate_fidelity(noise_superop(spec, 1), identity(4), 2);
    EXPECT_NEAR(f, (2 * std::pow(std::cos(spec.delta_t), 2) + 1) / 3, 1e-12);
    EXPECT_NEAR(f, 0.99, 1e-4);
    EXPECT_TRUE(is_unitary(noise_superop(spec, 1)));
}

TEST(Noise, StatisticalHitsTargetFidelity) {
    auto spec = NoiseSpec::of_kind(NoiseKind::Statistical);
    spec.seed = 42;
    const ComplexMatrix n = noise_superop(spec, 1);
    EXPECT_NEAR(avg_gate_fidelity(n, identity(4), 2), 0.89, 1e-12);
    // frozen: same seed, same channel; other seed, other channel
    EXPECT_EQ(max_abs_diff(n, noise_superop(spec, 1)), 0);
    spec.seed = 43;
    EXPECT_GT(max_abs_diff(n, noise_superop(spec, 1)), 1e-6);
    spec.seed.reset();
    EXPECT_THROW(noise_superop(spec, 1), std::invalid_argument);
}

TEST(Noise, TracePreservingAndPositiveOnStates) {
    std::mt19937_64 gen(21);
    for (auto kind : {NoiseKind::Statistical, NoiseKind::AmplitudeDamping, NoiseKind::Pauli, NoiseKind::Coherent,
                      NoiseKind::Depolarizing}) {
        auto spec = NoiseSpec::of_kind(kind);
        spec.seed = 5;
        for (std::size_t q = 1; q <= 3; q++) {
            const ComplexMatrix n = noise_superop(spec, q);
            for (int k = 0; k < 5; k++) {
                const ComplexVector v = random_state(gen, std::size_t{1} << q);
                const ComplexMatrix out = apply_channel(n, v * v.adjoint());
                EXPECT_NEAR(out.trace().real(), 1, 1e-12) << to_string(kind);
                Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((out + out.adjoint()) / 2.0);
                EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12) << to_string(kind);
            }
        }
    }
}

TEST(Noise, ScaleInterpolates) {
    auto spec = NoiseSpec::of_kind(NoiseKind::Pauli);
    const ComplexMatrix full = noise_superop(spec, 2);
    spec.scale = 0.25;
    EXPECT_LT(max_abs_diff(noise_superop(spec, 2), 0.75 * identity(16) + 0.25 * full), 1e-12);
    spec.scale = 1.5;
    EXPECT_THROW(noise_superop(spec, 2), std::invalid_argument);
}

TEST(Noise, RejectsBadParameters) {
    auto p = NoiseSpec::of_kind(NoiseKind::Pauli);
    p.pauli = {0.5, 0.1, 0.1, 0.1};
    EXPECT_THROW(p.validate(), std::invalid_argument);
    auto d = NoiseSpec::of_kind(NoiseKind::Depolarizing);
    d.depolarizing_p = 0.5;
    EXPECT_THROW(d.validate(), std::invalid_argument);
    auto a = NoiseSpec::of_kind(NoiseKind::AmplitudeDamping);
    a.gamma = -0.1;
    EXPECT_THROW(a.validate(), std::invalid_argument);
}

TEST(Noise, PtmSuperopRoundTrip) {
    std::mt19937_64 gen(22);
    const ComplexMatrix u = conjugation_superop(random_matrix(gen, 4, 4));
    EXPECT_LT(max_abs_diff(ptm_to_superop(superop_to_ptm(u, 2), 2), u), 1e-10);
}

TEST(Fidelity, IdealIsOne) {
    std::mt19937_64 gen(23);
    Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(gen, 4, 4));
    const ComplexMatrix u = qr.householderQ();
    const ComplexMatrix s = conjugation_superop(u);
    EXPECT_NEAR(avg_gate_fidelity(s, s, 4), 1, 1e-12);
}
