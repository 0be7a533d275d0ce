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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nrqae/noise.hpp"
#include "nrqae/quantum.hpp"

namespace nrqae {

inline constexpr int kConfigVersion = 1;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// How the pair (psi, target) is given. Exactly one form is active.
enum class ProblemForm { Angles, Vectors, ChannelPhase, Amplitude };

std::string to_string(ProblemForm form);

struct ProblemSpec {
    Mode mode = Mode::Amplitude;
    std::size_t qubits = 1;
    ProblemForm form = ProblemForm::Angles;

    double psi_angle = 0;     // angle_state(qubits, psi_angle)
    double phi_angle = 0;     // amplitude mode only
    std::vector<Complex> psi;  // explicit vectors, normalized on build
    std::vector<Complex> phi;
    double channel_phase = 0;
    double amplitude = 0;      // target |<psi|phi>|^2, amplitude mode
    std::string observable = "Z";

    EstimationProblem build() const;
};

struct IqaeSettings {
    double target_eps = 1e-4;
    double alpha = 0.05;
    std::size_t max_rounds = 64;
};

struct ExperimentConfig {
    int version = kConfigVersion;
    ProblemSpec problem;
    NoiseSpec noise;

    std::optional<std::uint64_t> shots;  // unset: exact
    std::size_t iterations = 6;          // max iteration k, deepest n = 2^k
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    double additive_error = 0;
    bool retry = false;

    std::vector<double> s_grid;          // verify-perturbation strengths
    std::size_t t_depth = 64;            // verify-perturbation: n = 1..t_depth
    IqaeSettings iqae;

    double plan_eps = 0.01;
    double plan_delta = 0.05;

    std::string out;                     // output directory, empty: stdout
};

ExperimentConfig parse_config(const std::string &json_text);
std::string dump_config(const ExperimentConfig &config);
ExperimentConfig load_config(const std::string &path);

void validate(const ExperimentConfig &config);

}  // namespace nrqae
