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

#include "nrqae/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <thread>

#include "nrqae/circuit.hpp"
#include "nrqae/estimator.hpp"
#include "nrqae/iqae.hpp"
#include "nrqae/perturb.hpp"

namespace nrqae {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fmt(const char *pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

NoisyCircuit make_circuit(const ExperimentConfig &config) {
    validate(config);
    try {
        return NoisyCircuit(config.problem.build(), config.noise);
    } catch (const ConfigError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
}

EstimatorOptions estimator_options(const ExperimentConfig &config, std::size_t max_iteration) {
    EstimatorOptions o;
    o.max_iteration = max_iteration;
    o.shots = config.shots;
    o.additive_error = config.additive_error;
    o.retry_with_more_shots = config.retry;
    return o;
}

struct Attempt {
    std::optional<EstimationResult> result;
    std::string error;
};

Attempt try_nrqae(const NoisyCircuit &circuit, const EstimatorOptions &options, const RngStream &stream) {
    try {
        return {run_nrqae(circuit, options, stream), {}};
    } catch (const EstimationFailure &e) {
        return {std::nullopt, e.what()};
    } catch (const NonPhysicalChannelError &e) {
        return {std::nullopt, e.what()};
    }
}

std::vector<double> default_s_grid() {
    std::vector<double> s;
    for (int k = 0; k <= 8; k++) s.push_back(std::pow(10.0, -3 + 2.0 * k / 8));
    return s;
}

}  // namespace

double median(std::vector<double> values) {
    values.erase(std::remove_if(values.begin(), values.end(), [](double v) { return std::isnan(v); }),
                 values.end());
    if (values.empty()) return kNan;
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size() / 2;
    return values.size() % 2 ? values[m] : (values[m - 1] + values[m]) / 2;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)> &fn) {
    const std::size_t workers =
        std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t k = 0; k < count; k++) fn(k);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; w++) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t k = w; k < count; k += workers) fn(k);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : pool) t.join();
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::uint64_t hoeffding_shots(double eps, double delta) {
    if (!(eps > 0 && eps < 1) || !(delta > 0 && delta < 1)) {
        throw std::invalid_argument("hoeffding_shots: eps and delta must lie in (0, 1)");
    }
    const double x = std::log(2 / delta) / (2 * eps * eps);
    auto m = static_cast<std::uint64_t>(std::ceil(x));
    // ceil can overshoot by one when x is an integer up to rounding
    if (m > 1 && std::abs(x - static_cast<double>(m - 1)) <= 1e-12 * x) m--;
    return std::max<std::uint64_t>(m, 1);
}

double hoeffding_coverage(double p, double eps, double delta, std::size_t draws, std::uint64_t seed) {
    const std::uint64_t m = hoeffding_shots(eps, delta);
    auto gen = RngStream{seed, 0}.substream(m, 7);
    std::binomial_distribution<std::uint64_t> binom(m, p);
    std::size_t inside = 0;
    for (std::size_t k = 0; k < draws; k++) {
        const double phat = static_cast<double>(binom(gen)) / static_cast<double>(m);
        if (std::abs(phat - p) <= eps) inside++;
    }
    return static_cast<double>(inside) / static_cast<double>(draws);
}

CommandOutput cmd_estimate(const ExperimentConfig &config) {
    const NoisyCircuit circuit = make_circuit(config);
    const double ideal = circuit.problem().ideal_value();
    const auto options = estimator_options(config, config.iterations);

    std::vector<Attempt> runs(config.trials);
    parallel_for(config.trials,
                 [&](std::size_t k) { runs[k] = try_nrqae(circuit, options, RngStream{config.seed, k}); });

    CommandOutput out;
    out.name = "estimate";
    out.table.header = {"trial",   "theta_ch",     "value",           "mirror", "ideal_value",
                        "abs_error", "decay",      "oracle_calls", "failed_iterations", "status"};
    for (std::size_t k = 0; k < runs.size(); k++) {
        const auto &r = runs[k];
        const auto trial = static_cast<std::int64_t>(k);
        if (!r.result) {
            out.table.rows.push_back({trial, kNan, kNan, kNan, ideal, kNan, kNan, std::int64_t{0}, std::int64_t{0},
                                      std::string("failed")});
            out.summary.push_back("trial " + std::to_string(k) + ": estimation failed: " + r.error);
            out.exit_code = kExitEstimation;
            continue;
        }
        const auto &e = *r.result;
        out.table.rows.push_back({trial, e.theta_ch, e.value, e.mirror, ideal, std::abs(e.value - ideal),
                                  e.decay.value_or(kNan), static_cast<std::int64_t>(e.oracle_calls),
                                  static_cast<std::int64_t>(e.failed_iterations), std::string("ok")});
        if (k == 0) {
            out.summary.push_back("theta_ch = " + format_real(e.theta_ch));
            out.summary.push_back(std::string(e.mode == Mode::Amplitude ? "amplitude" : "expectation") + " = " +
                                  format_real(e.value) + " (mirror " + format_real(e.mirror) + ")");
            out.summary.push_back("ideal = " + format_real(ideal));
            if (e.decay) out.summary.push_back("decay p = " + format_real(*e.decay));
            for (const auto &it : e.iterations) {
                std::string line = "  n=" + std::to_string(it.n) + " theta=" + format_real(it.theta);
                if (it.y) line += " y=" + format_real(*it.y);
                if (!it.note.empty()) line += " [" + it.note + "]";
                out.summary.push_back(line);
            }
        }
    }
    return out;
}

CommandOutput cmd_sweep_depth(const ExperimentConfig &config) {
    const NoisyCircuit circuit = make_circuit(config);
    const double theta_true = ideal_channel_phase(circuit.problem());
    const std::size_t levels = config.iterations + 1;

    // one job per (trial, level); rows are keyed by index so order is fixed
    std::vector<Attempt> runs(levels * config.trials);
    parallel_for(runs.size(), [&](std::size_t job) {
        const std::size_t level = job / config.trials, trial = job % config.trials;
        runs[job] = try_nrqae(circuit, estimator_options(config, level), RngStream{config.seed, trial});
    });

    CommandOutput out;
    out.name = "sweep-depth";
    out.table.header = {"depth", "trial", "theta_est", "theta_true", "abs_error", "status"};
    PlotSeries med{"median |error|", {}, {}};
    std::vector<double> depths, medians;
    for (std::size_t level = 0; level < levels; level++) {
        const auto depth = static_cast<std::int64_t>(std::size_t{1} << level);
        std::vector<double> errors;
        for (std::size_t trial = 0; trial < config.trials; trial++) {
            const auto &r = runs[level * config.trials + trial];
            const double est = r.result ? r.result->theta_ch : kNan;
            const double err = std::abs(est - theta_true);
            errors.push_back(err);
            out.table.rows.push_back({depth, static_cast<std::int64_t>(trial), est, theta_true, err,
                                      std::string(r.result ? "ok" : "failed")});
            if (!r.result) out.exit_code = kExitEstimation;
        }
        const double m = median(errors);
        depths.push_back(static_cast<double>(depth));
        medians.push_back(m);
        out.summary.push_back("depth " + std::to_string(depth) + ": median |error| " + format_real(m));
    }
    med.x = depths;
    med.y = medians;
    bool positive = std::all_of(medians.begin(), medians.end(), [](double v) { return v > 0; });
    if (positive && depths.size() >= 2) {
        out.summary.push_back("log-log slope of median error vs depth: " + fmt("%.4f", loglog_slope(depths, medians)));
    }
    out.svg = svg_line_plot({"NRQAE phase error vs depth", "max depth n", "median |theta_est - theta_true|", true,
                             true},
                            {med});
    return out;
}

CommandOutput cmd_compare_noise(const ExperimentConfig &config) {
    if (!config.shots) throw ConfigError("compare-noise needs a shot count (the baseline is sampled)");
    const NoisyCircuit circuit = make_circuit(config);
    const double ideal = circuit.problem().ideal_value();
    const std::size_t levels = config.iterations + 1;

    struct Pair {
        Attempt nrqae;
        IqaeResult iqae;
    };
    std::vector<Pair> runs(levels * config.trials);
    parallel_for(runs.size(), [&](std::size_t job) {
        const std::size_t level = job / config.trials, trial = job % config.trials;
        const RngStream stream{config.seed, trial};
        Pair &p = runs[job];
        p.nrqae = try_nrqae(circuit, estimator_options(config, level), stream);
        IqaeOptions q;
        q.shots_per_round = *config.shots;
        q.target_eps = config.iqae.target_eps;
        q.alpha = config.iqae.alpha;
        q.max_rounds = config.iqae.max_rounds;
        // matched budget: whatever NRQAE spent up to this depth
        q.oracle_budget = p.nrqae.result ? std::max<std::uint64_t>(p.nrqae.result->oracle_calls, 1) : 0;
        if (!p.nrqae.result) {
            std::uint64_t spent = 0;
            for (std::size_t i = 0; i <= level; i++) spent += 4 * *config.shots * 6 * (std::size_t{1} << i);
            q.oracle_budget = spent;
        }
        p.iqae = iqae_run(circuit, q, stream);
    });

    CommandOutput out;
    out.name = "compare-noise";
    out.table.header = {"depth", "trial", "method", "estimate", "ideal", "abs_error", "oracle_calls", "status"};
    PlotSeries sn{"NRQAE", {}, {}}, si{"IQAE", {}, {}};
    for (std::size_t level = 0; level < levels; level++) {
        const auto depth = static_cast<std::int64_t>(std::size_t{1} << level);
        std::vector<double> en, ei;
        for (std::size_t trial = 0; trial < config.trials; trial++) {
            const Pair &p = runs[level * config.trials + trial];
            const auto t = static_cast<std::int64_t>(trial);
            const double vn = p.nrqae.result ? p.nrqae.result->value : kNan;
            en.push_back(std::abs(vn - ideal));
            out.table.rows.push_back({depth, t, std::string("nrqae"), vn, ideal, std::abs(vn - ideal),
                                      static_cast<std::int64_t>(p.nrqae.result ? p.nrqae.result->oracle_calls : 0),
                                      std::string(p.nrqae.result ? "ok" : "failed")});
            if (!p.nrqae.result) out.exit_code = kExitEstimation;
            ei.push_back(std::abs(p.iqae.value - ideal));
            out.table.rows.push_back({depth, t, std::string("iqae"), p.iqae.value, ideal,
                                      std::abs(p.iqae.value - ideal), static_cast<std::int64_t>(p.iqae.oracle_calls),
                                      std::string(p.iqae.budget_exhausted ? "budget" : "ok")});
        }
        sn.x.push_back(static_cast<double>(depth));
        si.x.push_back(static_cast<double>(depth));
        sn.y.push_back(median(en));
        si.y.push_back(median(ei));
        out.summary.push_back("depth " + std::to_string(depth) + ": median |error| nrqae " + format_real(sn.y.back()) +
                              ", iqae " + format_real(si.y.back()));
    }
    out.svg = svg_line_plot({"NRQAE vs iterative QAE under " + to_string(config.noise.kind) + " noise",
                             "max depth n", "median |estimate - ideal|", true, true},
                            {sn, si});
    return out;
}

CommandOutput cmd_verify_perturbation(const ExperimentConfig &config) {
    validate(config);
    const EstimationProblem problem = config.problem.build();
    const std::vector<double> grid = config.s_grid.empty() ? default_s_grid() : config.s_grid;
    std::vector<std::size_t> depths;
    for (std::size_t n = 1; n <= config.t_depth; n++) depths.push_back(n);

    std::vector<PerturbationReport> reports(grid.size());
    try {
        parallel_for(grid.size(),
                     [&](std::size_t k) { reports[k] = perturbation_report(problem, config.noise, grid[k], depths); });
    } catch (const DegenerateProblemError &e) {
        throw ConfigError(std::string("verify-perturbation: ") + e.what());
    }

    CommandOutput out;
    out.name = "verify-perturbation";
    out.table.header = {"s",           "eps",          "lemma1_residual1", "lemma1_residual2", "first_order_shift",
                        "lemma2_residual", "c1_error", "c2_error",         "theta_ideal",      "theta_pert",
                        "theta_shift", "t_model_error_n1", "max_t_model_error", "uniformity", "overlap1",
                        "overlap2",    "flagged"};
    std::vector<double> s, l1, l2, c1, thm;
    std::size_t flagged = 0;
    double worst_uniformity = 0;
    for (const auto &r : reports) {
        const double first = r.t_model_error.empty() ? kNan : r.t_model_error.front();
        const double uniform = r.max_t_model_error / first;
        worst_uniformity = std::max(worst_uniformity, uniform);
        out.table.rows.push_back({r.s, r.eps, r.lemma1_residual1, r.lemma1_residual2, r.first_order_shift,
                                  r.lemma2_residual, r.c1_error, r.c2_error, r.theta_ideal, r.theta_pert,
                                  r.theta_shift, first, r.max_t_model_error, uniform, r.overlap1, r.overlap2,
                                  static_cast<std::int64_t>(r.flagged)});
        flagged += r.flagged;
        s.push_back(r.s);
        l1.push_back(std::max(r.lemma1_residual1, r.lemma1_residual2));
        l2.push_back(r.lemma2_residual);
        c1.push_back(r.c1_error);
        thm.push_back(r.max_t_model_error);
    }

    Table slopes;
    slopes.header = {"quantity", "slope", "expected", "within_band"};
    auto add = [&](const char *name, const std::vector<double> &y, double expected) {
        double slope = kNan;
        try {
            slope = loglog_slope(s, y);
        } catch (const std::invalid_argument &) {
        }
        const bool ok = std::abs(slope - expected) <= 0.3;
        slopes.rows.push_back({std::string(name), slope, expected, static_cast<std::int64_t>(ok)});
        out.summary.push_back(std::string(name) + " slope " + fmt("%.4f", slope) + " (expected " +
                              fmt("%.0f", expected) + (ok ? ", ok)" : ", OUT OF BAND)"));
    };
    if (grid.size() >= 2) {
        add("lemma1_residual", l1, 2);
        add("lemma2_residual", l2, 1);
        add("c1_error", c1, 1);
        add("theorem1_t_error", thm, 1);
    }
    out.summary.push_back("worst max/first t-model error ratio " + fmt("%.3f", worst_uniformity));
    out.summary.push_back(std::to_string(flagged) + " flagged row(s)");
    out.slopes = std::move(slopes);
    if (flagged) out.exit_code = kExitVerification;
    return out;
}

CommandOutput cmd_plan_shots(const ExperimentConfig &config) {
    std::uint64_t m;
    try {
        m = hoeffding_shots(config.plan_eps, config.plan_delta);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    CommandOutput out;
    out.name = "plan-shots";
    out.table.header = {"eps", "delta", "shots"};
    out.table.rows.push_back({config.plan_eps, config.plan_delta, static_cast<std::int64_t>(m)});
    out.summary.push_back(std::to_string(m) + " shots give |p_hat - p| <= " + format_real(config.plan_eps) +
                          " with probability >= " + format_real(1 - config.plan_delta));
    return out;
}

void write_outputs(const CommandOutput &output, const std::string &dir) {
    if (dir.empty()) {
        std::cout << to_csv(output.table);
        if (output.slopes) std::cout << '\n' << to_csv(*output.slopes);
        return;
    }
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto put = [&](const std::string &file, const std::string &text) {
        std::ofstream f(fs::path(dir) / file, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (fs::path(dir) / file).string());
        f << text;
    };
    put(output.name + ".csv", to_csv(output.table));
    if (output.slopes) put(output.name + "-slopes.csv", to_csv(*output.slopes));
    if (output.svg) put(output.name + ".svg", *output.svg);
}

}  // namespace nrqae
