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

#include "nrqae/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace nrqae {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kSeedGrid = 2048;
constexpr double kSnap = 1e-9;
constexpr double kMerge = 1e-12;

std::optional<double> snap_unit(double x) {
    if (std::abs(x) <= 1) {
        return x;
    }
    if (std::abs(x) <= 1 + kSnap) {
        return std::copysign(1.0, x);
    }
    return std::nullopt;
}

void sort_unique(std::vector<double> &v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(), [](double a, double b) { return std::abs(a - b) <= kMerge; }),
            v.end());
}

}  // namespace

std::optional<double> ratio_y(double t_n, double t_2n, double t_3n, double guard) {
    if (!(std::abs(t_2n) > guard)) {
        return std::nullopt;
    }
    return t_n * t_3n / (t_2n * t_2n);
}

std::vector<double> roots_cos(double y) {
    std::vector<double> out;
    const double a = 2 * (y - 1);
    if (a == 0) {
        out.push_back(1.0);
        return out;
    }
    const double disc = 1 - 4 * a;
    if (disc < 0) {
        return out;
    }
    // b = -1, c = 1. q = -(b + sign(b) sqrt(disc)) / 2 avoids cancellation;
    // the roots are q / a and c / q.
    const double q = (1 + std::sqrt(disc)) / 2;
    for (double x : {q / a, 1 / q}) {
        if (auto snapped = snap_unit(x)) {
            out.push_back(*snapped);
        }
    }
    sort_unique(out);
    return out;
}

std::vector<double> candidate_angles(double x, std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("candidate_angles: n must be at least 1");
    }
    const double alpha = std::acos(std::clamp(x, -1.0, 1.0));
    const double denom = 2.0 * static_cast<double>(n);
    std::vector<double> out;
    out.reserve(2 * n);
    for (std::size_t k = 0; k < n; k++) {
        const double base = 2 * kPi * static_cast<double>(k);
        out.push_back((alpha + base) / denom);
        out.push_back((2 * kPi - alpha + base) / denom);
    }
    sort_unique(out);
    return out;
}

std::optional<double> select_candidate(const std::vector<double> &candidates, double previous) {
    std::optional<double> best;
    double best_dist = std::numeric_limits<double>::infinity();
    for (double c : candidates) {
        const double d = std::abs(c - previous);
        if (d < best_dist - kMerge || (std::abs(d - best_dist) <= kMerge && best && c < *best)) {
            best = c;
            best_dist = d;
        }
    }
    return best;
}

double seed_theta(const std::array<double, 3> &triplet) {
    if (triplet[0] == 0 && triplet[1] == 0 && triplet[2] == 0) {
        return 0;
    }
    double best_theta = 0;
    double best_residual = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < kSeedGrid; j++) {
        const double theta = kPi * static_cast<double>(j) / static_cast<double>(kSeedGrid - 1);
        double num = 0, den = 0;
        std::array<double, 3> c{};
        for (int m = 0; m < 3; m++) {
            c[m] = std::cos((m + 1) * theta);
            num += triplet[m] * c[m];
            den += c[m] * c[m];
        }
        // C = |c|^2-weighted and nonnegative; a free sign would alias theta with pi - theta
        const double amp = std::max(0.0, num / den);
        double residual = 0;
        for (int m = 0; m < 3; m++) {
            const double r = triplet[m] - amp * c[m];
            residual += r * r;
        }
        if (residual < best_residual) {
            best_residual = residual;
            best_theta = theta;
        }
    }
    return best_theta;
}

double fit_decay(double theta_ch, const TSeries &series) {
    std::vector<double> xs, ys;
    for (const auto &[depth, entry] : series.entries) {
        const double c = std::cos(static_cast<double>(depth) * theta_ch);
        if (std::abs(c) <= 0.1 || entry.t == 0) {
            continue;
        }
        xs.push_back(static_cast<double>(depth));
        ys.push_back(std::log(std::abs(entry.t / c)));
    }
    if (xs.size() < 2) {
        throw std::invalid_argument("fit_decay: fewer than two usable depths");
    }
    const double count = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < xs.size(); k++) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= count;
    my /= count;
    double sxy = 0, sxx = 0;
    for (std::size_t k = 0; k < xs.size(); k++) {
        sxy += (xs[k] - mx) * (ys[k] - my);
        sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    return std::min(1.0, std::exp(sxy / sxx));
}

EstimationResult run_nrqae(const NoisyCircuit &circuit, const EstimatorOptions &options, const RngStream &stream) {
    EstimationResult result;
    result.mode = circuit.problem().mode();

    TripletSampler sampler(circuit, SamplingPlan{options.shots, options.additive_error, stream});
    auto guard_for = [&](std::optional<std::uint64_t> shots) {
        return shots ? 3 * t_half_width(*shots, options.guard_delta) : options.guard_exact;
    };

    std::optional<double> current;
    for (std::size_t i = 0; i <= options.max_iteration; i++) {
        IterationRecord rec;
        rec.n = std::size_t{1} << i;
        rec.t = sampler.triplet(rec.n);
        if (i == 0) {
            result.seed = seed_theta(rec.t);
            current = result.seed;
        }

        auto attempt = [&](const std::array<double, 3> &t, double guard) {
            rec.y = ratio_y(t[0], t[1], t[2], guard);
            rec.roots.clear();
            rec.candidates.clear();
            if (!rec.y) {
                rec.note = "division guard";
                return false;
            }
            rec.roots = roots_cos(*rec.y);
            if (rec.roots.empty()) {
                rec.note = "no real root in [-1, 1]";
                return false;
            }
            for (double x : rec.roots) {
                const auto angles = candidate_angles(x, rec.n);
                rec.candidates.insert(rec.candidates.end(), angles.begin(), angles.end());
            }
            std::sort(rec.candidates.begin(), rec.candidates.end());
            return true;
        };

        bool ok = attempt(rec.t, guard_for(options.shots));
        if (!ok && options.retry_with_more_shots && options.shots) {
            const std::uint64_t more = 4 * *options.shots;
            rec.t = sampler.resample(rec.n, more, 1);
            rec.retried = true;
            ok = attempt(rec.t, guard_for(more));
        }

        if (ok) {
            current = *select_candidate(rec.candidates, *current);
            rec.note.clear();
        } else {
            rec.failed = true;
            result.failed_iterations++;
        }
        rec.theta = *current;
        result.iterations.push_back(std::move(rec));
    }

    result.oracle_calls = sampler.oracle_calls();
    result.final_iteration_failed = !result.iterations.empty() && result.iterations.back().failed;
    result.theta_ch = current.value_or(0);
    const auto values = theta_to_value(result.theta_ch, result.mode);
    result.value = values.value;
    result.mirror = values.mirror;
    try {
        result.decay = fit_decay(result.theta_ch, sampler.series());
    } catch (const std::invalid_argument &) {
        result.decay.reset();
    }

    // Every t below the guard at every depth: psi and the target coincide (rho~ = 0), so theta = 0.
    const bool vanishing = std::all_of(result.iterations.begin(), result.iterations.end(), [&](const auto &rec) {
        return std::all_of(rec.t.begin(), rec.t.end(),
                           [&](double t) { return std::abs(t) <= guard_for(options.shots); });
    });
    if (result.failed_iterations == result.iterations.size() && vanishing) {
        result.theta_ch = 0;
        const auto v0 = theta_to_value(0, result.mode);
        result.value = v0.value;
        result.mirror = v0.mirror;
        result.decay.reset();
        for (auto &rec : result.iterations) {
            rec.theta = 0;
            rec.failed = false;
            rec.note = "degenerate: t vanishes";
        }
        result.failed_iterations = 0;
        result.final_iteration_failed = false;
        return result;
    }
    if (result.failed_iterations == result.iterations.size()) {
        throw EstimationFailure("every iteration failed (division guard or complex roots)", std::move(result));
    }
    return result;
}

}  // namespace nrqae
