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
#include <string>

#include "nrqae/linalg.hpp"

namespace nrqae {

enum class NoiseKind { None, Statistical, AmplitudeDamping, Pauli, Coherent, Depolarizing };

std::string to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(const std::string &text);

/// Weights of the identity and the three Pauli conjugations in a Pauli
/// mixture. Must sum to one so the channel preserves trace.
struct PauliWeights {
    double i = 1;
    double x = 0;
    double y = 0;
    double z = 0;
};

/// One of the per-layer noise models. Every model is defined on a single
/// qubit and applied independently to each qubit of the register. The
/// compiled channel is (1 - scale) * id + scale * N, which interpolates
/// between no noise (scale 0) and the model as printed (scale 1).
struct NoiseSpec {
    NoiseKind kind = NoiseKind::None;
    double scale = 1.0;

    // AmplitudeDamping: (1 - gamma) * id + gamma * reset-to-|0>.
    double gamma = 0.1;
    // Pauli: 0.6 I + 0.2 * (0.5 X + 1.5 Z).
    PauliWeights pauli{0.6, 0.1, 0.0, 0.3};
    // Depolarizing: (1 - 3p) I + p (X + Y + Z).
    double depolarizing_p = 0.1;
    // Coherent: U = exp(i delta_t X). The default gives average gate fidelity 0.99.
    double delta_t = 0.1228;
    // Statistical: frozen Gaussian perturbation of the Pauli transfer matrix.
    double target_fidelity = 0.89;
    double sigma = 0.05;
    std::optional<std::uint64_t> seed;

    static NoiseSpec none() { return {}; }
    static NoiseSpec of_kind(NoiseKind kind);

    /// Throws std::invalid_argument when a parameter is out of range.
    void validate() const;
};

/// Orthonormal Pauli basis: column k is vectorize(P_k) / sqrt(2^n), with
/// P_k = P_{k_1} x ... x P_{k_n} and single-qubit order I, X, Y, Z.
ComplexMatrix pauli_basis(std::size_t qubits);

/// Pauli transfer matrix (real) of a superoperator, and back.
RealMatrix superop_to_ptm(const ComplexMatrix &superop, std::size_t qubits);
ComplexMatrix ptm_to_superop(const RealMatrix &ptm, std::size_t qubits);

/// Single-qubit Pauli transfer matrix of the model, before interpolation.
/// `qubit` selects the independent draw for the statistical kind.
RealMatrix single_qubit_ptm(const NoiseSpec &spec, std::size_t qubit);

/// Superoperator on vectorized density matrices of `qubits` qubits.
ComplexMatrix noise_superop(const NoiseSpec &spec, std::size_t qubits);

/// (d F_pro + 1) / (d + 1) with F_pro = Tr(ideal^dag noisy) / d^2.
double avg_gate_fidelity(const ComplexMatrix &noisy, const ComplexMatrix &ideal, std::size_t dim);

}  // namespace nrqae
