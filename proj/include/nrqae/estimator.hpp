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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nrqae/circuit.hpp"
#include "nrqae/quantum.hpp"

namespace nrqae {

/// y = t_n t_3n / t_2n^2. Returns nullopt when |t_2n| <= guard, i.e. when
/// cos(2n theta) is too close to zero for this depth to be usable.
std::optional<double> ratio_y(double t_n, double t_2n, double t_3n, double guard = 1e-9);

/// Real roots in [-1, 1] of 2(y - 1)x^2 - x + 1 = 0, ascending. Roots within
/// 1e-9 outside the interval are snapped onto it; others are dropped.
std::vector<double> roots_cos(double y);

/// Every theta in [0, pi] with cos(2 n theta) = x; 2n values, fewer when
/// x = +-1 merges pairs. Ascending.
std::vector<double> candidate_angles(double x, std::size_t n);

/// Candidate closest to previous; ties go to the smaller angle.
std::optional<double> select_candidate(const std::vector<double> &candidates, double previous);

/// Initial channel phase from the depth-1 triplet: grid search over 2048
/// points of [0, pi] for the best least-squares fit of t_m = C cos(m theta).
double seed_theta(const std::array<double, 3> &triplet);

/// Least-squares slope of log|t_n / cos(n theta)| against n, exponentiated
/// and capped at 1. Depths with |cos(n theta)| <= 0.1 are ignored.
double fit_decay(double theta_ch, const TSeries &series);

struct EstimatorOptions {
    std::size_t max_iteration = 6;        // iterations i = 0..max_iteration, n = 2^i
    std::optional<std::uint64_t> shots;   // nullopt: exact probabilities
    double additive_error = 0;
    double guard_exact = 1e-9;
    double guard_delta = 0.05;            // sampled guard: 3 * t_half_width(shots, guard_delta)
    bool retry_with_more_shots = false;   // one 4x-shot resample per failed iteration
};

struct IterationRecord {
    std::size_t n = 0;
    std::array<double, 3> t{};
    std::optional<double> y;
    std::vector<double> roots;
    std::vector<double> candidates;
    double theta = 0;  // selected channel phase (or the retained one on failure)
    bool failed = false;
    bool retried = false;
    std::string note;
};

struct EstimationResult {
    Mode mode = Mode::Amplitude;
    double seed = 0;  // seed_theta of the depth-1 triplet
    std::vector<IterationRecord> iterations;
    double theta_ch = 0;
    double value = 0;
    double mirror = 0;
    std::optional<double> decay;
    std::uint64_t oracle_calls = 0;
    std::size_t failed_iterations = 0;
    bool final_iteration_failed = false;
};

/// Every iteration failed; `result` carries the per-iteration diagnostics.
struct EstimationFailure : std::runtime_error {
    EstimationFailure(const std::string &what, EstimationResult result)
        : std::runtime_error(what), result(std::move(result)) {}
    EstimationResult result;
};

/// Runs the doubling iteration: at n = 2^i measure (t_n, t_2n, t_3n), solve
/// for cos(2 n theta), enumerate the matching angles and keep the one
/// closest to the previous estimate.
EstimationResult run_nrqae(const NoisyCircuit &circuit, const EstimatorOptions &options,
                           const RngStream &stream = {});

}  // namespace nrqae
