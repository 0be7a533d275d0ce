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

#include "nrqae/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nrqae {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kOpTol = 1e-10;

std::size_t qubits_for_dim(Eigen::Index dim) {
    std::size_t q = 0;
    while ((Eigen::Index{1} << q) < dim) {
        q++;
    }
    if ((Eigen::Index{1} << q) != dim || q < 1 || q > 3) {
        throw std::invalid_argument("state dimension must be 2, 4 or 8 (1 to 3 qubits), got " +
                                    std::to_string(dim));
    }
    return q;
}

void require_unit(const ComplexVector &v, const char *name) {
    if (std::abs(v.norm() - 1.0) > kNormTol) {
        throw std::invalid_argument(std::string(name) + " is not normalized (norm " +
                                    std::to_string(v.norm()) + ")");
    }
}

}  // namespace

std::string to_string(Mode mode) {
    return mode == Mode::Amplitude ? "amplitude" : "observable";
}

Mode mode_from_string(const std::string &text) {
    if (text == "amplitude") {
        return Mode::Amplitude;
    }
    if (text == "observable") {
        return Mode::Observable;
    }
    throw std::invalid_argument("unknown mode '" + text + "'");
}

EstimationProblem EstimationProblem::amplitude(ComplexVector psi, ComplexVector phi) {
    require_unit(psi, "psi");
    require_unit(phi, "phi");
    if (psi.size() != phi.size()) {
        throw DimensionError("psi and phi have different dimensions");
    }
    EstimationProblem p;
    p.mode_ = Mode::Amplitude;
    p.qubits_ = qubits_for_dim(psi.size());
    p.psi_ = std::move(psi);
    p.target_ = std::move(phi);
    return p;
}

EstimationProblem EstimationProblem::observable(ComplexVector psi, ComplexMatrix obs) {
    require_unit(psi, "psi");
    if (obs.rows() != psi.size() || obs.cols() != psi.size()) {
        throw DimensionError("observable does not match the state dimension");
    }
    if (!is_hermitian(obs, kOpTol)) {
        throw std::invalid_argument("observable is not Hermitian");
    }
    const auto dim = static_cast<std::size_t>(obs.rows());
    if ((obs * obs - identity(dim)).norm() > kOpTol) {
        throw std::invalid_argument("observable does not square to the identity");
    }
    EstimationProblem p;
    p.mode_ = Mode::Observable;
    p.qubits_ = qubits_for_dim(psi.size());
    p.target_ = obs * psi;
    p.psi_ = std::move(psi);
    p.obs_ = std::move(obs);
    return p;
}

double EstimationProblem::ideal_value() const {
    const Complex overlap = target_.dot(psi_);
    if (mode_ == Mode::Amplitude) {
        return std::norm(overlap);
    }
    return overlap.real();
}

TwoStateGeometry EstimationProblem::geometry() const {
    TwoStateGeometry g;
    g.a = target_.dot(psi_);
    ComplexVector perp = psi_ - g.a * target_;
    const double perp_norm = perp.norm();
    g.b = perp_norm;
    g.mu = 0;
    g.nu = std::acos(std::clamp(std::abs(g.a), 0.0, 1.0));
    g.lam = std::abs(g.a) > 0 ? -std::arg(g.a) : 0.0;
    return g;
}

ComplexMatrix pauli_i() {
    return identity(2);
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

ComplexMatrix pauli_string(const std::string &name) {
    if (name.empty()) {
        throw std::invalid_argument("empty Pauli string");
    }
    ComplexMatrix out = identity(1);
    for (char c : name) {
        switch (c) {
            case 'I': out = kron(out, pauli_i()); break;
            case 'X': out = kron(out, pauli_x()); break;
            case 'Y': out = kron(out, pauli_y()); break;
            case 'Z': out = kron(out, pauli_z()); break;
            default: throw std::invalid_argument("bad Pauli character '" + std::string(1, c) + "'");
        }
    }
    return out;
}

ComplexVector basis_state(std::size_t qubits, std::size_t index) {
    const auto dim = Eigen::Index{1} << qubits;
    ComplexVector v = ComplexVector::Zero(dim);
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return v;
}

ComplexVector angle_state(std::size_t qubits, double angle) {
    ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << qubits);
    v(0) = std::cos(angle);
    v(1) = std::sin(angle);
    return v;
}

EstimationProblem problem_with_channel_phase(std::size_t qubits, double theta_ch) {
    return EstimationProblem::amplitude(basis_state(qubits, 0), angle_state(qubits, theta_ch / 4));
}

ComplexMatrix reflection_about(const ComplexVector &state) {
    require_unit(state, "reflection state");
    const auto dim = static_cast<std::size_t>(state.size());
    return 2.0 * state * state.adjoint() - identity(dim);
}

ComplexMatrix grover_amplitude(const EstimationProblem &problem) {
    if (problem.mode() != Mode::Amplitude) {
        throw std::invalid_argument("grover_amplitude requires an amplitude-mode problem");
    }
    return reflection_about(problem.psi()) * reflection_about(problem.target());
}

ComplexMatrix grover_observable(const EstimationProblem &problem) {
    if (problem.mode() != Mode::Observable) {
        throw std::invalid_argument("grover_observable requires an observable-mode problem");
    }
    return reflection_about(problem.psi()) * problem.obs();
}

ComplexMatrix grover(const EstimationProblem &problem) {
    return problem.mode() == Mode::Amplitude ? grover_amplitude(problem) : grover_observable(problem);
}

ValuePair theta_to_value(double theta_ch, Mode mode) {
    constexpr double kSlack = 1e-12;
    if (!(theta_ch >= -kSlack && theta_ch <= std::numbers::pi + kSlack)) {
        throw std::out_of_range("channel phase " + std::to_string(theta_ch) + " outside [0, pi]");
    }
    const double c = std::cos(std::clamp(theta_ch, 0.0, std::numbers::pi) / 2);
    if (mode == Mode::Amplitude) {
        const double value = (1 + c) / 2;
        return {value, 1 - value};
    }
    return {c, -c};
}

double ideal_channel_phase(const EstimationProblem &problem) {
    const double v = problem.ideal_value();
    const double cos_g = problem.mode() == Mode::Amplitude ? 2 * v - 1 : v;
    const double theta_g = std::acos(std::clamp(cos_g, -1.0, 1.0));
    const double theta_ch = 2 * theta_g;
    return theta_ch > std::numbers::pi ? 2 * std::numbers::pi - theta_ch : theta_ch;
}

ComplexVector vectorize(const ComplexMatrix &op) {
    if (op.rows() != op.cols()) {
        throw DimensionError("vectorize: operator is not square");
    }
    const Eigen::Index d = op.rows();
    ComplexVector v(d * d);
    for (Eigen::Index i = 0; i < d; i++) {
        for (Eigen::Index j = 0; j < d; j++) {
            v(i * d + j) = op(i, j);
        }
    }
    return v;
}

ComplexMatrix devectorize(const ComplexVector &v) {
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (d * d != v.size()) {
        throw DimensionError("devectorize: length is not a perfect square");
    }
    ComplexMatrix op(d, d);
    for (Eigen::Index i = 0; i < d; i++) {
        for (Eigen::Index j = 0; j < d; j++) {
            op(i, j) = v(i * d + j);
        }
    }
    return op;
}

Complex vec_inner(const ComplexVector &sigma, const ComplexVector &rho) {
    if (sigma.size() != rho.size()) {
        throw DimensionError("vec_inner: length mismatch");
    }
    return sigma.dot(rho);
}

ComplexMatrix sandwich_superop(const ComplexMatrix &a, const ComplexMatrix &b) {
    return kron(a, b.transpose());
}

ComplexMatrix conjugation_superop(const ComplexMatrix &u) {
    if (u.rows() != u.cols()) {
        throw DimensionError("conjugation_superop: operator is not square");
    }
    return kron(u, u.conjugate());
}

ComplexMatrix rho_tilde(const EstimationProblem &problem) {
    const ComplexVector &phi = problem.target();
    const ComplexVector &psi = problem.psi();
    return phi * phi.adjoint() - psi * psi.adjoint();
}

}  // namespace nrqae
