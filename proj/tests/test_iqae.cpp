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

#include <vector>

#include "nrqae/iqae.hpp"
#include "nrqae/perturb.hpp"
#include "test_util.hpp"

using namespace nrqae;
using namespace nrqae::testing;

namespace {

NoisyCircuit with_amplitude(double a, const NoiseSpec &noise = NoiseSpec::none()) {
    return NoisyCircuit(problem_with_channel_phase(1, 2 * std::acos(2 * a - 1)), noise);
}

}  // namespace

TEST(Iqae, NoiselessConverges) {
    const auto c = with_amplitude(0.75);
    IqaeOptions o;
    o.shots_per_round = 100000;
    o.target_eps = 1e-4;
    for (std::uint64_t seed = 0; seed < 5; seed++) {
        const auto r = iqae_run(c, o, RngStream{seed, 0});
        EXPECT_NEAR(r.amplitude, 0.75, 1e-3);
        EXPECT_LE(r.a_lo, r.amplitude);
        EXPECT_GE(r.a_hi, r.amplitude);
        EXPECT_FALSE(r.budget_exhausted);
    }
}

TEST(Iqae, AmplitudeOneContainsOne) {
    const NoisyCircuit c(EstimationProblem::amplitude(basis_state(1, 0), basis_state(1, 0)), NoiseSpec::none());
    IqaeOptions o;
    o.target_eps = 1e-3;
    const auto r = iqae_run(c, o, RngStream{1, 0});
    EXPECT_GE(r.a_hi, 1 - 1e-12);
    EXPECT_NEAR(r.amplitude, 1, 1e-3);
    EXPECT_LE(r.state.rounds.size(), 4u);
}

TEST(Iqae, IntervalInvariants) {
    const auto c = with_amplitude(0.3, NoiseSpec::of_kind(NoiseKind::Depolarizing));
    IqaeOptions o;
    o.shots_per_round = 2000;
    o.target_eps = 1e-5;
    const auto r = iqae_run(c, o, RngStream{4, 0});
    double width = kPi / 2;
    for (const auto &round : r.state.rounds) {
        EXPECT_LE(round.theta_lo, round.theta_hi);
        EXPECT_LE(round.theta_hi - round.theta_lo, width + 1e-15);
        width = round.theta_hi - round.theta_lo;
    }
}

TEST(Iqae, BudgetIsRespectedAndFlagged) {
    const auto c = with_amplitude(0.6);
    IqaeOptions o;
    o.shots_per_round = 1000;
    o.target_eps = 1e-6;
    o.oracle_budget = 50000;
    const auto r = iqae_run(c, o, RngStream{2, 0});
    EXPECT_LE(r.oracle_calls, 50000u);
    EXPECT_TRUE(r.budget_exhausted);
    EXPECT_LE(r.a_lo, r.a_hi);
}

TEST(Iqae, NextKFitsHalfPeriod) {
    std::mt19937_64 gen(51);
    std::uniform_real_distribution<double> u(0, kPi / 2), w(1e-5, 0.3);
    for (int n = 0; n < 500; n++) {
        const double lo = u(gen), hi = std::min(kPi / 2, lo + w(gen));
        const std::size_t k0 = gen() % 4;
        const std::size_t k = iqae_next_k(k0, lo, hi);
        EXPECT_GE(k, k0);
        if (k == k0) continue;
        const double big = 4.0 * k + 2;
        EXPECT_GE(big, 2 * (4.0 * k0 + 2));
        EXPECT_LE(std::floor(big * hi / kPi - 1e-9), std::floor(big * lo / kPi));
    }
}

TEST(Iqae, NoiselessCostScalesInverselyWithEps) {
    const auto c = with_amplitude(0.37);
    std::vector<double> eps, calls;
    for (double e : {1e-1, 3e-2, 1e-2, 3e-3, 1e-3}) {
        double total = 0;
        for (std::uint64_t seed = 0; seed < 20; seed++) {
            IqaeOptions o;
            o.shots_per_round = 200;
            o.target_eps = e;
            total += static_cast<double>(iqae_run(c, o, RngStream{seed, 0}).oracle_calls);
        }
        eps.push_back(e);
        calls.push_back(total / 20);
    }
    const double slope = loglog_slope(eps, calls);
    EXPECT_NEAR(slope, -1, 0.2) << "slope " << slope;
}

TEST(Iqae, ObservableModeReturnsMagnitude) {
    ComplexVector s(2);
    s << std::cos(0.4), std::sin(0.4);
    const NoisyCircuit c(EstimationProblem::observable(s, pauli_z()), NoiseSpec::none());
    IqaeOptions o;
    o.target_eps = 1e-4;
    const auto r = iqae_run(c, o, RngStream{3, 0});
    EXPECT_NEAR(r.value, std::abs(std::cos(0.8)), 2e-3);
}

TEST(Iqae, DeterministicGivenSeed) {
    const auto c = with_amplitude(0.9, NoiseSpec::of_kind(NoiseKind::Pauli));
    IqaeOptions o;
    const auto a = iqae_run(c, o, RngStream{8, 2});
    const auto b = iqae_run(c, o, RngStream{8, 2});
    EXPECT_EQ(a.amplitude, b.amplitude);
    EXPECT_EQ(a.oracle_calls, b.oracle_calls);
}
