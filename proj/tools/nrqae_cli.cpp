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

// nrqae: experiment runner. Precedence: built-in defaults < --config file < flags.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nrqae/config.hpp"
#include "nrqae/harness.hpp"

namespace {

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> shots;
    bool exact = false;
    std::optional<std::size_t> iterations;
    std::optional<double> eps;
    std::optional<double> delta;
    bool print_config = false;
};

void add_common(CLI::App *cmd, Overrides &o) {
    cmd->add_option("--config", o.config_path, "JSON experiment config (version 1)");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--out", o.out, "output directory for CSV/SVG (default: CSV on stdout)");
    cmd->add_option("--trials", o.trials, "number of independent trials")->check(CLI::PositiveNumber);
    cmd->add_option("--shots", o.shots, "shots per probability (sampled mode)")->check(CLI::PositiveNumber);
    cmd->add_flag("--exact", o.exact, "exact probabilities, ignores shots");
    cmd->add_option("--iterations", o.iterations, "max iteration k (deepest n = 2^k)");
    cmd->add_flag("--print-config", o.print_config, "print the effective config and exit");
}

nrqae::ExperimentConfig effective_config(const Overrides &o) {
    nrqae::ExperimentConfig c = o.config_path.empty() ? nrqae::ExperimentConfig{} : nrqae::load_config(o.config_path);
    if (o.seed) c.seed = *o.seed;
    if (o.out) c.out = *o.out;
    if (o.trials) c.trials = *o.trials;
    if (o.shots) c.shots = *o.shots;
    if (o.exact) c.shots.reset();
    if (o.iterations) c.iterations = *o.iterations;
    if (o.eps) c.plan_eps = *o.eps;
    if (o.delta) c.plan_delta = *o.delta;
    return c;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Noise-resilient quantum amplitude estimation experiments"};
    app.require_subcommand(1);
    Overrides o;

    auto *estimate = app.add_subcommand("estimate", "run NRQAE once per trial and print the estimate");
    auto *sweep = app.add_subcommand("sweep-depth", "phase error vs maximum depth");
    auto *compare = app.add_subcommand("compare-noise", "NRQAE vs iterative QAE at matched oracle budgets");
    auto *verify = app.add_subcommand("verify-perturbation", "first-order perturbation checks over an s-grid");
    auto *plan = app.add_subcommand("plan-shots", "Hoeffding shot count for (eps, delta)");
    for (auto *cmd : {estimate, sweep, compare, verify, plan}) add_common(cmd, o);
    plan->add_option("--eps", o.eps, "additive accuracy in (0, 1)");
    plan->add_option("--delta", o.delta, "failure probability in (0, 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return nrqae::kExitUsage;
    }

    try {
        const nrqae::ExperimentConfig config = effective_config(o);
        if (o.print_config) {
            std::cout << nrqae::dump_config(config);
            return nrqae::kExitOk;
        }
        nrqae::CommandOutput out;
        if (estimate->parsed()) out = nrqae::cmd_estimate(config);
        else if (sweep->parsed()) out = nrqae::cmd_sweep_depth(config);
        else if (compare->parsed()) out = nrqae::cmd_compare_noise(config);
        else if (verify->parsed()) out = nrqae::cmd_verify_perturbation(config);
        else out = nrqae::cmd_plan_shots(config);

        nrqae::write_outputs(out, config.out);
        for (const auto &line : out.summary) std::cerr << line << '\n';
        return out.exit_code;
    } catch (const nrqae::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return nrqae::kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return nrqae::kExitEstimation;
    }
}
