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
#include <span>
#include <stdexcept>
#include <vector>

#include "nrqae/circuit.hpp"
#include "nrqae/linalg.hpp"
#include "nrqae/noise.hpp"
#include "nrqae/quantum.hpp"

namespace nrqae {

/// Eigenvectors of G inside the two-state plane and the vectorized outer
/// products built from them.
struct SubspaceBasis {
    ComplexVector phi_plus;   // eigenvalue e^{+i theta_G}, theta_G in (0, pi)
    ComplexVector phi_minus;  // eigenvalue e^{-i theta_G}
    double theta_g = 0;
    /// vec(|phi+><phi+|), vec(|phi+><phi-|), vec(|phi-><phi+|), vec(|phi-><phi-|).
    std::array<ComplexVector, 4> vectors;

    /// The four vectors as columns.
    ComplexMatrix matrix() const;
};

struct DegenerateProblemError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Throws DegenerateProblemError when psi and the target are parallel.
SubspaceBasis subspace_basis(const EstimationProblem &problem);

/// One row of the perturbation checks at noise scale s, where the layer is
/// N(s) M_G with N(s) = (1 - s) id + s N.
struct PerturbationReport {
    double s = 0;
    double eps = 0;  // ||N(s) M_G - M_G||_F

    Complex lambda1_ideal, lambda2_ideal;
    Complex lambda1, lambda2;
    Complex lambda1_first_order, lambda2_first_order;  // ideal + <<rho_i|dM|rho_i>>
    double lemma1_residual1 = 0;
    double lemma1_residual2 = 0;
    double first_order_shift = 0;  // |<<rho_i1|dM|rho_i1>>|

    Complex c, c1, c2;
    double c1_error = 0;           // |c1 - c|
    double c2_error = 0;           // |c2 - conj(c)|
    double delta1_norm = 0;        // ||rho_1 - rho_i1||
    double delta2_norm = 0;
    double lemma2_residual = 0;    // ||rho~ - c1 rho_1 - c2 rho_2|| = ||Delta rho||

    double theta_ideal = 0;
    double theta_pert = 0;
    double theta_shift = 0;

    std::vector<std::size_t> depths;
    std::vector<double> t_model_error;  // |exact_t(n) - (|c1|^2 l1^n + |c2|^2 l2^n)|
    double max_t_model_error = 0;

    double overlap1 = 1;  // |<<rho_i1|rho_1>>| of the matched eigenvector
    double overlap2 = 1;
    bool flagged = false;  // eigenpair matching ambiguous (overlap < 0.5)
};

/// Runs all three checks for one noise scale.
PerturbationReport perturbation_report(const EstimationProblem &problem, const NoiseSpec &noise, double s,
                                       std::span<const std::size_t> depths);

/// Noisy channel phase: argument of the eigenvalue of N M_G whose eigenvector
/// best overlaps vec(|phi+><phi-|), folded into [0, pi].
double perturbed_channel_phase(const NoisyCircuit &circuit);

/// Least-squares slope of log(y) against log(x). Points with y <= 0 are
/// skipped; throws when fewer than two remain.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace nrqae
