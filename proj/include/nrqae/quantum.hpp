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
#include <string>

#include "nrqae/linalg.hpp"

namespace nrqae {

enum class Mode { Amplitude, Observable };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string &text);

/// Parametrization of a state pair in the plane they span.
///
/// With phi taken as the first basis vector, psi = cos(nu)|alpha> +
/// e^{i lam} sin(nu)|beta> after removing a global phase, so mu = 0 and
/// cos^2(mu - nu) is the overlap. `a` and `b` are the coefficients of psi
/// on phi and on the in-plane complement of phi.
struct TwoStateGeometry {
    double mu = 0;
    double nu = 0;
    double lam = 0;
    Complex a{0, 0};
    Complex b{0, 0};
};

/// What is being estimated: |<phi|psi>|^2 (amplitude mode) or <psi|O|psi>
/// for a Hermitian unitary O (observable mode). Construct through the
/// factories, which validate the invariants.
class EstimationProblem {
   public:
    static EstimationProblem amplitude(ComplexVector psi, ComplexVector phi);
    static EstimationProblem observable(ComplexVector psi, ComplexMatrix obs);

    Mode mode() const { return mode_; }
    std::size_t qubits() const { return qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(psi_.size()); }
    const ComplexVector &psi() const { return psi_; }
    /// phi in amplitude mode; O|psi> in observable mode.
    const ComplexVector &target() const { return target_; }
    /// Only meaningful in observable mode.
    const ComplexMatrix &obs() const { return obs_; }

    /// |<phi|psi>|^2 or <psi|O|psi>, computed directly from the vectors.
    double ideal_value() const;
    TwoStateGeometry geometry() const;

   private:
    EstimationProblem() = default;

    Mode mode_ = Mode::Amplitude;
    std::size_t qubits_ = 0;
    ComplexVector psi_;
    ComplexVector target_;
    ComplexMatrix obs_;
};

// Single-qubit Paulis.
ComplexMatrix pauli_i();
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Tensor product of Paulis named by a string such as "ZI" (leftmost factor
/// acts on the most significant qubit).
ComplexMatrix pauli_string(const std::string &name);

/// Computational basis state |index> on the given number of qubits.
ComplexVector basis_state(std::size_t qubits, std::size_t index);

/// cos(angle)|0...0> + sin(angle)|0...01>.
ComplexVector angle_state(std::size_t qubits, double angle);

/// Amplitude-mode problem whose noiseless channel phase is theta_ch:
/// psi = |0...0>, phi = angle_state(theta_ch / 4).
EstimationProblem problem_with_channel_phase(std::size_t qubits, double theta_ch);

/// 2|x><x| - I.
ComplexMatrix reflection_about(const ComplexVector &state);

/// G = (2|psi><psi| - I)(2|phi><phi| - I).
ComplexMatrix grover_amplitude(const EstimationProblem &problem);

/// G_O = (2|psi><psi| - I) O.
ComplexMatrix grover_observable(const EstimationProblem &problem);

/// Dispatches on the problem mode.
ComplexMatrix grover(const EstimationProblem &problem);

struct ValuePair {
    double value;
    double mirror;
};

/// Converts a channel phase in [0, pi] to the estimated quantity. The
/// channel phase is twice the eigenphase of G, so amplitude =
/// (1 + cos(theta_ch / 2)) / 2 and expectation = cos(theta_ch / 2). The
/// mirror is the value implied by 2pi - theta_ch.
ValuePair theta_to_value(double theta_ch, Mode mode);

/// Noiseless channel phase of the problem, folded into [0, pi].
double ideal_channel_phase(const EstimationProblem &problem);

// Row-stacking vectorization: vec(rho)[i * d + j] = rho(i, j), so that
// A rho B maps to kron(A, B^T) vec(rho) and <<sigma|rho>> = Tr(sigma^dag rho).
ComplexVector vectorize(const ComplexMatrix &op);
ComplexMatrix devectorize(const ComplexVector &v);
Complex vec_inner(const ComplexVector &sigma, const ComplexVector &rho);

/// Superoperator of rho -> A rho B.
ComplexMatrix sandwich_superop(const ComplexMatrix &a, const ComplexMatrix &b);

/// Superoperator of rho -> U rho U^dag, i.e. kron(U, conj(U)).
ComplexMatrix conjugation_superop(const ComplexMatrix &u);

/// phi phi^dag - psi psi^dag (with phi := O psi in observable mode).
ComplexMatrix rho_tilde(const EstimationProblem &problem);

}  // namespace nrqae
