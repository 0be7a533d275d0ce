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
#include <map>
#include <optional>
#include <stdexcept>

#include "nrqae/linalg.hpp"
#include "nrqae/noise.hpp"
#include "nrqae/quantum.hpp"
#include "nrqae/rng.hpp"

namespace nrqae {

/// Which of the two states a circuit prepares or projects onto. In
/// observable mode Target means O|psi>.
enum class Slot { Psi, Target };

/// Raised when a channel produces a probability outside [-1e-6, 1 + 1e-6].
struct NonPhysicalChannelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A problem together with its per-layer noisy channel N * M_G.
class NoisyCircuit {
   public:
    NoisyCircuit(EstimationProblem problem, const NoiseSpec &noise);

    const EstimationProblem &problem() const { return problem_; }
    const NoiseSpec &noise() const { return noise_; }
    const ComplexMatrix &ideal_layer() const { return ideal_layer_; }
    const ComplexMatrix &noise_channel() const { return noise_channel_; }
    const ComplexMatrix &layer() const { return layer_; }

    /// vectorize of |psi><psi| or |target><target|.
    const ComplexVector &projector(Slot slot) const;

    /// (N M_G)^n applied to v.
    ComplexVector propagate(const ComplexVector &v, std::size_t n) const;

   private:
    EstimationProblem problem_;
    NoiseSpec noise_;
    ComplexMatrix ideal_layer_;
    ComplexMatrix noise_channel_;
    ComplexMatrix layer_;
    ComplexVector psi_proj_;
    ComplexVector target_proj_;
};

/// <<P_meas| (N M_G)^n |rho_prep>>, clamped into [0, 1] when it strays by at
/// most 1e-6.
double circuit_prob(const NoisyCircuit &circuit, Slot prep, Slot meas, std::size_t n);

/// The four probabilities in the order (Target->Target, Psi->Target,
/// Target->Psi, Psi->Psi), written prep->meas. Their signed sum with signs
/// (+, -, -, +) is the t statistic.
std::array<double, 4> four_probs(const NoisyCircuit &circuit, std::size_t n);

/// Exact t_n from the four-term combination.
double exact_t(const NoisyCircuit &circuit, std::size_t n);

/// <<rho~| (N M_G)^n |rho~>> computed directly; equal to exact_t.
double exact_t_superop(const NoisyCircuit &circuit, std::size_t n);

/// t_n with each probability replaced by Binomial(shots, p) / shots, drawn
/// from substream (n, term, attempt) of `stream`.
double sampled_t(const NoisyCircuit &circuit, std::size_t n, std::uint64_t shots, const RngStream &stream,
                 std::uint64_t attempt = 0);

/// Joint Hoeffding half-width of a t statistic built from four independent
/// `shots`-shot frequencies: sqrt(4 ln(2 / delta) / (2 shots)).
double t_half_width(std::uint64_t shots, double delta);

struct TEntry {
    double t = 0;
    std::uint64_t shots = 0;  // 0 for exact entries
};

/// t values indexed by depth, tagged with the inputs that produced them.
struct TSeries {
    std::map<std::size_t, TEntry> entries;
    std::uint64_t problem_hash = 0;
    std::uint64_t noise_hash = 0;
    std::uint64_t seed = 0;
};

std::uint64_t hash_problem(const EstimationProblem &problem);
std::uint64_t hash_noise(const NoiseSpec &noise);

/// How t values are obtained: exact when `shots` is empty, sampled
/// otherwise. `additive_error` adds +-additive_error with a random sign to
/// every t value (a fixed-magnitude measurement error model).
struct SamplingPlan {
    std::optional<std::uint64_t> shots;
    double additive_error = 0;
    RngStream stream;
};

/// Produces (t_n, t_2n, t_3n) triplets and remembers every depth it has
/// evaluated, so the doubling schedule re-measures nothing it already has.
class TripletSampler {
   public:
    TripletSampler(const NoisyCircuit &circuit, SamplingPlan plan);

    std::array<double, 3> triplet(std::size_t n);

    /// A fresh triplet at `shots` shots from a separate substream; not cached.
    std::array<double, 3> resample(std::size_t n, std::uint64_t shots, std::uint64_t attempt);

    const TSeries &series() const { return series_; }
    const SamplingPlan &plan() const { return plan_; }
    /// Number of distinct depths evaluated so far.
    std::size_t evaluations() const { return evaluations_; }
    /// G applications spent so far: 4 * shots * depth per sampled depth.
    std::uint64_t oracle_calls() const { return oracle_calls_; }

   private:
    double evaluate(std::size_t depth, std::optional<std::uint64_t> shots, std::uint64_t attempt);

    const NoisyCircuit &circuit_;
    SamplingPlan plan_;
    TSeries series_;
    std::size_t evaluations_ = 0;
    std::uint64_t oracle_calls_ = 0;
};

}  // namespace nrqae
