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

#include "nrqae/iqae.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace nrqae {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEdge = 1e-12;
// Substream term for IQAE draws, disjoint from the four t-statistic terms.
constexpr std::uint64_t kIqaeTerm = 5;

double sin2(double x) {
    const double s = std::sin(x);
    return s * s;
}

}  // namespace

std::size_t iqae_next_k(std::size_t k_current, double theta_lo, double theta_hi) {
    const double width = theta_hi - theta_lo;
    const std::size_t k_floor = 4 * k_current + 2;
    if (width <= 0) {
        return k_current;
    }
    const double k_max_real = std::floor(kPi / width);
    if (k_max_real < static_cast<double>(k_floor)) {
        return k_current;
    }
    // Cap to keep the scaled angles well inside double precision.
    std::size_t big_k = static_cast<std::size_t>(std::min(k_max_real, 1e9));
    big_k -= (big_k - 2) % 4;
    // Require at least doubling the amplification; otherwise keep k and
    // accumulate more shots at the current power.
    for (; big_k >= 2 * k_floor; big_k -= 4) {
        const double lo = static_cast<double>(big_k) * theta_lo;
        const double hi = static_cast<double>(big_k) * theta_hi;
        const double half = std::floor(lo / kPi);
        if (hi <= (half + 1) * kPi + kEdge) {
            return (big_k - 2) / 4;
        }
    }
    return k_current;
}

IqaeResult iqae_run(const NoisyCircuit &circuit, const IqaeOptions &options, const RngStream &stream) {
    IqaeResult result;
    IqaeState &st = result.state;
    st.theta_lo = 0;
    st.theta_hi = kPi / 2;

    const double rounds_bound =
        std::max(1.0, std::ceil(std::log2(kPi / (8 * std::max(options.target_eps, 1e-15)))));
    std::uint64_t count_at_k = 0;
    std::uint64_t shots_at_k = 0;
    std::size_t last_k = 0;

    for (std::size_t round = 0; round < options.max_rounds; round++) {
        const double a_lo = sin2(st.theta_lo);
        const double a_hi = sin2(st.theta_hi);
        if ((a_hi - a_lo) / 2 <= options.target_eps) {
            break;
        }

        const std::size_t k = iqae_next_k(st.k, st.theta_lo, st.theta_hi);
        const std::uint64_t cost_per_shot = std::max<std::uint64_t>(k, 1);
        std::uint64_t shots = options.shots_per_round;
        if (options.oracle_budget > 0) {
            const std::uint64_t remaining =
                options.oracle_budget > result.oracle_calls ? options.oracle_budget - result.oracle_calls : 0;
            shots = std::min(shots, remaining / cost_per_shot);
            if (shots == 0) {
                result.budget_exhausted = true;
                break;
            }
        }

        const double p = circuit_prob(circuit, Slot::Psi, Slot::Target, k);
        auto gen = stream.substream(k, kIqaeTerm, round);
        std::binomial_distribution<std::uint64_t> binom(shots, p);
        const std::uint64_t count = binom(gen);
        result.oracle_calls += shots * cost_per_shot;
        st.shots_used += shots;

        if (round == 0 || k != last_k) {
            count_at_k = 0;
            shots_at_k = 0;
        }
        count_at_k += count;
        shots_at_k += shots;
        last_k = k;
        st.k = k;

        const double freq = static_cast<double>(count_at_k) / static_cast<double>(shots_at_k);
        const double eps_a =
            std::sqrt(std::log(2 * rounds_bound / options.alpha) / (2 * static_cast<double>(shots_at_k)));
        const double f_lo = std::max(0.0, freq - eps_a);
        const double f_hi = std::min(1.0, freq + eps_a);

        const double big_k = static_cast<double>(4 * k + 2);
        const double half = std::floor(big_k * st.theta_lo / kPi + kEdge);
        const bool upper = std::fmod(half, 2.0) == 0;
        const double base = std::floor(half / 2) * 2 * kPi;
        double lo, hi;
        // probability = (1 - cos(K theta)) / 2
        if (upper) {
            lo = std::acos(1 - 2 * f_lo);
            hi = std::acos(1 - 2 * f_hi);
        } else {
            lo = 2 * kPi - std::acos(1 - 2 * f_hi);
            hi = 2 * kPi - std::acos(1 - 2 * f_lo);
        }
        const double new_lo = (base + lo) / big_k;
        const double new_hi = (base + hi) / big_k;

        IqaeRound rec{k, shots, freq, 0, 0, false};
        const double merged_lo = std::max(st.theta_lo, new_lo);
        const double merged_hi = std::min(st.theta_hi, new_hi);
        if (merged_lo <= merged_hi) {
            st.theta_lo = merged_lo;
            st.theta_hi = merged_hi;
        } else {
            // Noise pushed the new interval off the old one; collapse onto the
            // old endpoint nearest to it.
            rec.inconsistent = true;
            const double point = new_hi < st.theta_lo ? st.theta_lo : st.theta_hi;
            st.theta_lo = st.theta_hi = point;
        }
        rec.theta_lo = st.theta_lo;
        rec.theta_hi = st.theta_hi;
        st.rounds.push_back(rec);
    }

    result.a_lo = sin2(st.theta_lo);
    result.a_hi = sin2(st.theta_hi);
    result.amplitude = (result.a_lo + result.a_hi) / 2;
    result.value = circuit.problem().mode() == Mode::Amplitude ? result.amplitude : std::sqrt(result.amplitude);
    return result;
}

}  // namespace nrqae
