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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nrqae/config.hpp"
#include "nrqae/report.hpp"

namespace nrqae {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitEstimation = 2,
    kExitVerification = 3,
};

struct CommandOutput {
    std::string name;                 // file stem: <out>/<name>.csv, <name>.svg
    Table table;
    std::optional<Table> slopes;      // verify-perturbation only
    std::optional<std::string> svg;
    std::vector<std::string> summary;  // human-readable lines for stdout
    int exit_code = kExitOk;
};

// Smallest m with 2 exp(-2 eps^2 m) <= delta.
std::uint64_t hoeffding_shots(double eps, double delta);

// Fraction of `draws` binomial(m, p) estimates within eps of p, m = hoeffding_shots(eps, delta).
double hoeffding_coverage(double p, double eps, double delta, std::size_t draws, std::uint64_t seed);

CommandOutput cmd_estimate(const ExperimentConfig &config);
CommandOutput cmd_sweep_depth(const ExperimentConfig &config);
CommandOutput cmd_compare_noise(const ExperimentConfig &config);
CommandOutput cmd_verify_perturbation(const ExperimentConfig &config);
CommandOutput cmd_plan_shots(const ExperimentConfig &config);

// Writes CSV/SVG under `dir` (created if missing); empty dir sends the CSV to stdout.
void write_outputs(const CommandOutput &output, const std::string &dir);

// Runs fn(0..count-1) on up to hardware_concurrency threads. Results land by index.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &fn);

double median(std::vector<double> values);

}  // namespace nrqae
