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

#include <set>

#include "nrqae/circuit.hpp"
#include "nrqae/rng.hpp"
#include "test_util.hpp"

using namespace nrqae;
using namespace nrqae::testing;

namespace {

EstimationProblem worked() {
    return EstimationProblem::amplitude(basis_state(1, 0), angle_state(1, kPi / 6));
}

}  // namespace

TEST(Philox, KnownAnswer) {
    // Random123 reference vector: key 0, counter 0
    Philox4x32 gen(0, 0);
    EXPECT_EQ(gen(), 0x6627e8d5u);
    EXPECT_EQ(gen(), 0xe169c58du);
    EXPECT_EQ(gen(), 0xbc57ac4cu);
    EXPECT_EQ(gen(), 0x9b00dbd8u);
}

TEST(RngStream, SubstreamsAreDisjointAndReproducible) {
    const RngStream s{7, 3};
    auto a = s.substream(4, 1);
    auto b = s.substream(4, 1);
    EXPECT_EQ(a(), b());
    std::set<std::uint32_t> firsts;
    for (std::uint64_t depth = 1; depth <= 8; depth++)
        for (std::uint64_t term = 0; term < 6; term++) firsts.insert(s.substream(depth, term)());
    EXPECT_EQ(firsts.size(), 48u);
    EXPECT_NE(RngStream({7, 3}).substream(1, 0)(), RngStream({7, 4}).substream(1, 0)());
}

TEST(CircuitProb, Examples) {
    const NoisyCircuit c(worked(), NoiseSpec::none());
    EXPECT_NEAR(circuit_prob(c, Slot::Psi, Slot::Psi, 0), 1, 1e-15);
    EXPECT_NEAR(circuit_prob(c, Slot::Target, Slot::Target, 1), 0.25, 1e-12);
    // G phi is orthogonal to phi-rotated-by-90, so psi -> target vanishes at n = 1 with G = R_psi R_phi
    EXPECT_NEAR(circuit_prob(c, Slot::Psi, Slot::Target, 1), 0, 1e-12);
    EXPECT_NEAR(circuit_prob(c, Slot::Target, Slot::Psi, 1), 0.75, 1e-12);
}

TEST(ExactT, Examples) {
    const NoisyCircuit c(worked(), NoiseSpec::none());
    EXPECT_NEAR(exact_t(c, 1), -0.25, 1e-12);
    EXPECT_NEAR(exact_t(c, 2), -0.25, 1e-12);
    EXPECT_NEAR(exact_t(c, 3), 0.5, 1e-12);
    EXPECT_NEAR(exact_t(c, 0), 0.5, 1e-12);
    const NoisyCircuit same(EstimationProblem::amplitude(angle_state(1, 0.3), angle_state(1, 0.3)),
                            NoiseSpec::of_kind(NoiseKind::Depolarizing));
    for (std::size_t n : {0u, 1u, 5u, 17u}) EXPECT_NEAR(exact_t(same, n), 0, 1e-12);
}

TEST(ExactT, MatchesSuperoperatorAndTrace) {
    std::mt19937_64 gen(31);
    for (int k = 0; k < 30; k++) {
        const std::size_t q = 1 + k % 3, dim = std::size_t{1} << q;
        const auto p = EstimationProblem::amplitude(random_state(gen, dim), random_state(gen, dim));
        const NoisyCircuit c(p, NoiseSpec::none());
        const ComplexMatrix r = rho_tilde(p), g = grover(p);
        for (std::size_t n : {1u, 2u, 7u}) {
            const ComplexMatrix gn = mat_power(g, n);
            const double direct = (r * gn * r * gn.adjoint()).trace().real();
            EXPECT_NEAR(exact_t(c, n), direct, 1e-10);
            EXPECT_NEAR(exact_t_superop(c, n), direct, 1e-10);
        }
    }
}

TEST(ExactT, NoiselessCosineModel) {
    std::mt19937_64 gen(32);
    for (int k = 0; k < 30; k++) {
        const auto p = EstimationProblem::amplitude(random_state(gen, 4), random_state(gen, 4));
        const NoisyCircuit c(p, NoiseSpec::none());
        const double th = ideal_channel_phase(p);
        const double big_c = exact_t(c, 0);
        for (std::size_t n = 1; n <= 10; n++) EXPECT_NEAR(exact_t(c, n), big_c * std::cos(n * th), 1e-10);
        // C eliminated: t_n + t_{n+2} = 2 cos(th) t_{n+1}
        EXPECT_NEAR(exact_t(c, 3) + exact_t(c, 5), 2 * std::cos(th) * exact_t(c, 4), 1e-10);
    }
}

TEST(ExactT, NoisyLayersRepeatTheSameChannel) {
    const auto p = problem_with_channel_phase(2, 1.1);
    const NoisyCircuit c(p, NoiseSpec::of_kind(NoiseKind::AmplitudeDamping));
    const ComplexMatrix layer = c.noise_channel() * conjugation_superop(grover(p));
    const ComplexVector r = vectorize(rho_tilde(p));
    for (std::size_t n : {1u, 4u, 9u}) {
        EXPECT_NEAR(exact_t_superop(c, n), vec_inner(r, mat_power(layer, n) * r).real(), 1e-12);
        EXPECT_NEAR(exact_t(c, n), exact_t_superop(c, n), 1e-12);
    }
}

TEST(SampledT, ConvergesAndIsDeterministic) {
    const NoisyCircuit c(worked(), NoiseSpec::of_kind(NoiseKind::Pauli));
    const RngStream s{99, 0};
    for (std::size_t n : {1u, 2u, 3u}) {
        const double a = sampled_t(c, n, 100000, s);
        EXPECT_NEAR(a, exact_t(c, n), 0.02);
        EXPECT_EQ(a, sampled_t(c, n, 100000, s));
    }
    EXPECT_NE(sampled_t(c, 1, 1000, s), sampled_t(c, 1, 1000, RngStream{100, 0}));
    EXPECT_THROW(sampled_t(c, 1, 0, s), std::invalid_argument);
}

TEST(SampledT, CertainOutcomesAreNoiseless) {
    const auto same = EstimationProblem::amplitude(angle_state(1, 0.3), angle_state(1, 0.3));
    const NoisyCircuit c(same, NoiseSpec::none());
    EXPECT_EQ(sampled_t(c, 0, 10, RngStream{1, 0}), 0);
}

TEST(SampledT, FourTermHoeffdingBound) {
    const NoisyCircuit c(problem_with_channel_phase(2, 1.3), NoiseSpec::of_kind(NoiseKind::Depolarizing));
    const std::uint64_t shots = 2000;
    const double delta = 0.05, bound = 4 * std::sqrt(4 * std::log(2 / delta) / (2.0 * shots));
    const double exact = exact_t(c, 2);
    int inside = 0;
    for (std::uint64_t trial = 0; trial < 400; trial++) {
        inside += std::abs(sampled_t(c, 2, shots, RngStream{5, trial}) - exact) <= bound;
    }
    EXPECT_GE(inside, static_cast<int>(400 * (1 - 4 * delta)));
}

TEST(TripletSampler, ExactWorkedTriplets) {
    const NoisyCircuit c(worked(), NoiseSpec::none());
    TripletSampler s(c, SamplingPlan{});
    const auto t1 = s.triplet(1);
    EXPECT_NEAR(t1[0], -0.25, 1e-12);
    EXPECT_NEAR(t1[1], -0.25, 1e-12);
    EXPECT_NEAR(t1[2], 0.5, 1e-12);
    EXPECT_EQ(s.evaluations(), 3u);
    const auto t2 = s.triplet(2);
    EXPECT_EQ(s.evaluations(), 5u);  // only depths 4 and 6 are new
    EXPECT_NEAR(t2[0], -0.25, 1e-12);
    EXPECT_NEAR(t2[1], -0.25, 1e-12);
    EXPECT_NEAR(t2[2], 0.5, 1e-12);
    EXPECT_EQ(s.series().entries.size(), 5u);
    EXPECT_EQ(s.series().problem_hash, hash_problem(worked()));
}

TEST(TripletSampler, AdditiveErrorHasFixedMagnitude) {
    const NoisyCircuit c(worked(), NoiseSpec::none());
    TripletSampler s(c, SamplingPlan{std::nullopt, 0.01, RngStream{3, 0}});
    const auto t = s.triplet(1);
    EXPECT_NEAR(std::abs(t[0] + 0.25), 0.01, 1e-12);
    EXPECT_NEAR(std::abs(t[1] + 0.25), 0.01, 1e-12);
    EXPECT_NEAR(std::abs(t[2] - 0.5), 0.01, 1e-12);
}

TEST(TripletSampler, CountsOracleCalls) {
    const NoisyCircuit c(worked(), NoiseSpec::none());
    TripletSampler s(c, SamplingPlan{100, 0, RngStream{}});
    s.triplet(1);
    EXPECT_EQ(s.oracle_calls(), 4u * 100 * (1 + 2 + 3));
    s.triplet(1);
    EXPECT_EQ(s.oracle_calls(), 4u * 100 * 6);
}

TEST(Hashes, DistinguishInputs) {
    EXPECT_NE(hash_problem(worked()), hash_problem(problem_with_channel_phase(1, 1.0)));
    auto a = NoiseSpec::of_kind(NoiseKind::Pauli), b = a;
    b.scale = 0.5;
    EXPECT_NE(hash_noise(a), hash_noise(b));
    EXPECT_EQ(hash_noise(a), hash_noise(NoiseSpec::of_kind(NoiseKind::Pauli)));
}
