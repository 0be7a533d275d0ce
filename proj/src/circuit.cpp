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

#include "nrqae/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <string>

namespace nrqae {

namespace {

constexpr double kProbSlack = 1e-6;
constexpr std::size_t kMatVecDepthLimit = 1024;

// Sign of term k in the t statistic, terms ordered as in four_probs.
constexpr std::array<double, 4> kTermSigns{+1, -1, -1, +1};
constexpr std::array<Slot, 4> kPrep{Slot::Target, Slot::Psi, Slot::Target, Slot::Psi};
constexpr std::array<Slot, 4> kMeas{Slot::Target, Slot::Target, Slot::Psi, Slot::Psi};

// Term index reserved for the additive-error sign draw.
constexpr std::uint64_t kAdditiveTerm = 4;

class Fnv1a {
   public:
    void add(const void *data, std::size_t size) {
        const auto *bytes = static_cast<const unsigned char *>(data);
        for (std::size_t k = 0; k < size; k++) {
            h_ = (h_ ^ bytes[k]) * 0x100000001B3ULL;
        }
    }
    void add(double x) { add(&x, sizeof x); }
    void add(std::uint64_t x) { add(&x, sizeof x); }
    void add(const ComplexMatrix &m) {
        add(static_cast<std::uint64_t>(m.rows()));
        add(static_cast<std::uint64_t>(m.cols()));
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            for (Eigen::Index i = 0; i < m.rows(); i++) {
                add(m(i, j).real());
                add(m(i, j).imag());
            }
        }
    }
    std::uint64_t value() const { return h_; }

   private:
    std::uint64_t h_ = 0xCBF29CE484222325ULL;
};

}  // namespace

NoisyCircuit::NoisyCircuit(EstimationProblem problem, const NoiseSpec &noise)
    : problem_(std::move(problem)), noise_(noise) {
    ideal_layer_ = conjugation_superop(grover(problem_));
    noise_channel_ = noise_superop(noise_, problem_.qubits());
    layer_ = noise_channel_ * ideal_layer_;
    psi_proj_ = vectorize(problem_.psi() * problem_.psi().adjoint());
    target_proj_ = vectorize(problem_.target() * problem_.target().adjoint());
}

const ComplexVector &NoisyCircuit::projector(Slot slot) const {
    return slot == Slot::Psi ? psi_proj_ : target_proj_;
}

ComplexVector NoisyCircuit::propagate(const ComplexVector &v, std::size_t n) const {
    if (n > kMatVecDepthLimit) {
        return mat_power(layer_, n) * v;
    }
    ComplexVector out = v;
    for (std::size_t k = 0; k < n; k++) {
        out = layer_ * out;
    }
    return out;
}

double circuit_prob(const NoisyCircuit &circuit, Slot prep, Slot meas, std::size_t n) {
    const ComplexVector evolved = circuit.propagate(circuit.projector(prep), n);
    const double p = vec_inner(circuit.projector(meas), evolved).real();
    if (p < -kProbSlack || p > 1 + kProbSlack) {
        throw NonPhysicalChannelError("circuit probability " + std::to_string(p) + " at depth " +
                                      std::to_string(n) + " lies outside [0, 1]; the noise channel is not physical");
    }
    return std::clamp(p, 0.0, 1.0);
}

std::array<double, 4> four_probs(const NoisyCircuit &circuit, std::size_t n) {
    std::array<double, 4> out{};
    // Two propagations cover all four terms.
    const ComplexVector from_target = circuit.propagate(circuit.projector(Slot::Target), n);
    const ComplexVector from_psi = circuit.propagate(circuit.projector(Slot::Psi), n);
    for (std::size_t k = 0; k < 4; k++) {
        const ComplexVector &evolved = kPrep[k] == Slot::Target ? from_target : from_psi;
        const double p = vec_inner(circuit.projector(kMeas[k]), evolved).real();
        if (p < -kProbSlack || p > 1 + kProbSlack) {
            throw NonPhysicalChannelError("circuit probability " + std::to_string(p) + " at depth " +
                                          std::to_string(n) +
                                          " lies outside [0, 1]; the noise channel is not physical");
        }
        out[k] = std::clamp(p, 0.0, 1.0);
    }
    return out;
}

double exact_t(const NoisyCircuit &circuit, std::size_t n) {
    const auto p = four_probs(circuit, n);
    double t = 0;
    for (std::size_t k = 0; k < 4; k++) {
        t += kTermSigns[k] * p[k];
    }
    return t;
}

double exact_t_superop(const NoisyCircuit &circuit, std::size_t n) {
    const ComplexVector rho = vectorize(rho_tilde(circuit.problem()));
    return vec_inner(rho, circuit.propagate(rho, n)).real();
}

double sampled_t(const NoisyCircuit &circuit, std::size_t n, std::uint64_t shots, const RngStream &stream,
                 std::uint64_t attempt) {
    if (shots == 0) {
        throw std::invalid_argument("sampled_t: shots must be at least 1");
    }
    const auto p = four_probs(circuit, n);
    double t = 0;
    for (std::size_t k = 0; k < 4; k++) {
        auto gen = stream.substream(n, k, attempt);
        std::binomial_distribution<std::uint64_t> binom(shots, p[k]);
        t += kTermSigns[k] * static_cast<double>(binom(gen)) / static_cast<double>(shots);
    }
    return t;
}

double t_half_width(std::uint64_t shots, double delta) {
    return std::sqrt(4 * std::log(2 / delta) / (2 * static_cast<double>(shots)));
}

std::uint64_t hash_problem(const EstimationProblem &problem) {
    Fnv1a h;
    h.add(static_cast<std::uint64_t>(problem.mode()));
    h.add(ComplexMatrix(problem.psi()));
    h.add(ComplexMatrix(problem.target()));
    if (problem.mode() == Mode::Observable) {
        h.add(problem.obs());
    }
    return h.value();
}

std::uint64_t hash_noise(const NoiseSpec &noise) {
    Fnv1a h;
    h.add(static_cast<std::uint64_t>(noise.kind));
    for (double x : {noise.scale, noise.gamma, noise.pauli.i, noise.pauli.x, noise.pauli.y, noise.pauli.z,
                     noise.depolarizing_p, noise.delta_t, noise.target_fidelity, noise.sigma}) {
        h.add(x);
    }
    h.add(noise.seed.value_or(0));
    h.add(static_cast<std::uint64_t>(noise.seed.has_value()));
    return h.value();
}

TripletSampler::TripletSampler(const NoisyCircuit &circuit, SamplingPlan plan)
    : circuit_(circuit), plan_(plan) {
    series_.problem_hash = hash_problem(circuit.problem());
    series_.noise_hash = hash_noise(circuit.noise());
    series_.seed = plan_.stream.seed;
}

double TripletSampler::evaluate(std::size_t depth, std::optional<std::uint64_t> shots, std::uint64_t attempt) {
    double t;
    if (shots) {
        t = sampled_t(circuit_, depth, *shots, plan_.stream, attempt);
        oracle_calls_ += 4 * *shots * depth;
    } else {
        t = exact_t(circuit_, depth);
    }
    if (plan_.additive_error != 0) {
        auto gen = plan_.stream.substream(depth, kAdditiveTerm, attempt);
        const bool positive = (gen() & 1u) != 0;
        t += positive ? plan_.additive_error : -plan_.additive_error;
    }
    return t;
}

std::array<double, 3> TripletSampler::triplet(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("triplet: base depth must be at least 1");
    }
    std::array<double, 3> out{};
    for (std::size_t m = 1; m <= 3; m++) {
        const std::size_t depth = m * n;
        auto it = series_.entries.find(depth);
        if (it == series_.entries.end()) {
            const double t = evaluate(depth, plan_.shots, 0);
            it = series_.entries.emplace(depth, TEntry{t, plan_.shots.value_or(0)}).first;
            evaluations_++;
        }
        out[m - 1] = it->second.t;
    }
    return out;
}

std::array<double, 3> TripletSampler::resample(std::size_t n, std::uint64_t shots, std::uint64_t attempt) {
    std::array<double, 3> out{};
    for (std::size_t m = 1; m <= 3; m++) {
        out[m - 1] = evaluate(m * n, shots, attempt);
    }
    return out;
}

}  // namespace nrqae
