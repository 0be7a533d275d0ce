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

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nrqae/circuit.hpp"
#include "nrqae/rng.hpp"

namespace nrqae {

struct IqaeRound {
    std::size_t k = 0;            // Grover power applied to psi
    std::uint64_t shots = 0;
    double frequency = 0;         // observed good-state frequency
    double theta_lo = 0;
    double theta_hi = 0;
    bool inconsistent = false;    // new interval missed the previous one
};

/// Confidence interval on the Grover angle theta_a, where the good-state
/// probability after k Grover steps is sin^2((2k + 1) theta_a) and the
/// amplitude is sin^2(theta_a).
struct IqaeState {
    double theta_lo = 0;
    double theta_hi = 0;
    std::size_t k = 0;
    std::uint64_t shots_used = 0;
    std::vector<IqaeRound> rounds;
};

struct IqaeOptions {
    std::uint64_t shots_per_round = 100000;
    double target_eps = 1e-3;            // half-width on the amplitude
    double alpha = 0.05;                 // 1 - confidence
    std::uint64_t oracle_budget = 0;     // 0: unlimited
    std::size_t max_rounds = 64;
};

struct IqaeResult {
    double amplitude = 0;   // midpoint of the amplitude interval
    double a_lo = 0;
    double a_hi = 0;
    /// In observable mode: +sqrt(amplitude), the principal-branch expectation.
    double value = 0;
    std::uint64_t oracle_calls = 0;
    bool budget_exhausted = false;
    IqaeState state;
};

/// Simplified iterative amplitude estimation on the same noisy circuit:
/// measures |<target| G^k |psi>|^2 and narrows a Hoeffding interval on
/// theta_a, picking the largest k whose scaled interval stays within one
/// half-period of the cosine. Each shot of a depth-k circuit costs
/// max(k, 1) oracle calls.
IqaeResult iqae_run(const NoisyCircuit &circuit, const IqaeOptions &options, const RngStream &stream);

/// Largest k >= k_current such that (4k + 2) [theta_lo, theta_hi] lies in a
/// single half-period [m pi, (m + 1) pi].
std::size_t iqae_next_k(std::size_t k_current, double theta_lo, double theta_hi);

}  // namespace nrqae
