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

#include "nrqae/noise.hpp"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "nrqae/quantum.hpp"
#include "nrqae/rng.hpp"

namespace nrqae {

namespace {

const std::array<ComplexMatrix, 4> &single_paulis() {
    static const std::array<ComplexMatrix, 4> paulis{pauli_i(), pauli_x(), pauli_y(), pauli_z()};
    return paulis;
}

RealMatrix pauli_mixture_ptm(const PauliWeights &w) {
    // Conjugation by a Pauli is diagonal in the Pauli basis with entries
    // +1 on the Paulis it commutes with and -1 on the ones it anticommutes with.
    RealMatrix r = RealMatrix::Zero(4, 4);
    r(0, 0) = w.i + w.x + w.y + w.z;
    r(1, 1) = w.i + w.x - w.y - w.z;
    r(2, 2) = w.i - w.x + w.y - w.z;
    r(3, 3) = w.i - w.x - w.y + w.z;
    return r;
}

RealMatrix amplitude_damping_ptm(double gamma) {
    ComplexMatrix k0 = ComplexMatrix::Zero(2, 2);
    ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
    k0(0, 0) = 1;  // |0><0|
    k1(0, 1) = 1;  // |0><1|
    const ComplexMatrix reset = conjugation_superop(k0) + conjugation_superop(k1);
    const ComplexMatrix channel = (1 - gamma) * identity(4) + gamma * reset;
    return superop_to_ptm(channel, 1);
}

RealMatrix coherent_ptm(double delta_t) {
    const ComplexMatrix u = std::cos(delta_t) * pauli_i() + Complex(0, std::sin(delta_t)) * pauli_x();
    return superop_to_ptm(conjugation_superop(u), 1);
}

RealMatrix statistical_ptm(const NoiseSpec &spec, std::size_t qubit) {
    const double f_pro = (3 * spec.target_fidelity - 1) / 2;
    const double shrink = (4 * f_pro - 1) / 3;

    Philox4x32 gen(*spec.seed, mix64(0x5747u ^ qubit));
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Matrix3d e;
    Eigen::Vector3d offset;
    for (int i = 0; i < 3; i++) {
        offset(i) = normal(gen);
        for (int j = 0; j < 3; j++) {
            e(i, j) = normal(gen);
        }
    }
    e -= (e.trace() / 3) * Eigen::Matrix3d::Identity();

    // The Bloch map r -> t + A r keeps the Bloch ball inside itself when
    // |t| + ||A||_2 <= 1; shrink the perturbation until that holds.
    double sigma = spec.sigma;
    Eigen::Matrix3d a;
    Eigen::Vector3d t;
    for (int attempt = 0;; attempt++) {
        a = shrink * Eigen::Matrix3d::Identity() + sigma * e;
        t = sigma * offset;
        Eigen::JacobiSVD<Eigen::Matrix3d> svd(a);
        if (t.norm() + svd.singularValues()(0) <= 1.0 || attempt == 60) {
            break;
        }
        sigma /= 2;
    }

    RealMatrix r = RealMatrix::Zero(4, 4);
    r(0, 0) = 1;
    r.block(1, 0, 3, 1) = t;
    r.block(1, 1, 3, 3) = a;
    return r;
}

}  // namespace

std::string to_string(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::None: return "none";
        case NoiseKind::Statistical: return "statistical";
        case NoiseKind::AmplitudeDamping: return "amplitude-damping";
        case NoiseKind::Pauli: return "pauli";
        case NoiseKind::Coherent: return "coherent";
        case NoiseKind::Depolarizing: return "depolarizing";
    }
    throw std::logic_error("unhandled NoiseKind");
}

NoiseKind noise_kind_from_string(const std::string &text) {
    for (auto kind : {NoiseKind::None, NoiseKind::Statistical, NoiseKind::AmplitudeDamping, NoiseKind::Pauli,
                      NoiseKind::Coherent, NoiseKind::Depolarizing}) {
        if (to_string(kind) == text) {
            return kind;
        }
    }
    throw std::invalid_argument("unknown noise kind '" + text + "'");
}

NoiseSpec NoiseSpec::of_kind(NoiseKind kind) {
    NoiseSpec s;
    s.kind = kind;
    return s;
}

void NoiseSpec::validate() const {
    if (!(scale >= 0 && scale <= 1)) {
        throw std::invalid_argument("noise scale must lie in [0, 1]");
    }
    switch (kind) {
        case NoiseKind::None:
        case NoiseKind::Coherent:
            break;
        case NoiseKind::AmplitudeDamping:
            if (!(gamma >= 0 && gamma <= 1)) {
                throw std::invalid_argument("amplitude damping gamma must lie in [0, 1]");
            }
            break;
        case NoiseKind::Pauli: {
            const double total = pauli.i + pauli.x + pauli.y + pauli.z;
            if (std::abs(total - 1) > 1e-10) {
                throw std::invalid_argument("Pauli weights sum to " + std::to_string(total) +
                                            ", not 1; the channel would not preserve trace");
            }
            break;
        }
        case NoiseKind::Depolarizing:
            if (!(depolarizing_p >= 0 && depolarizing_p <= 1.0 / 3)) {
                throw std::invalid_argument("depolarizing p must lie in [0, 1/3]");
            }
            break;
        case NoiseKind::Statistical:
            if (!seed) {
                throw std::invalid_argument("statistical noise requires a seed");
            }
            if (!(target_fidelity > 0.5 && target_fidelity <= 1)) {
                throw std::invalid_argument("statistical target fidelity must lie in (0.5, 1]");
            }
            if (!(sigma >= 0)) {
                throw std::invalid_argument("statistical sigma must be non-negative");
            }
            break;
    }
}

ComplexMatrix pauli_basis(std::size_t qubits) {
    const std::size_t dim = std::size_t{1} << qubits;
    const std::size_t count = dim * dim;
    const double norm = 1 / std::sqrt(static_cast<double>(dim));
    ComplexMatrix basis(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(count));
    for (std::size_t k = 0; k < count; k++) {
        ComplexMatrix p = identity(1);
        for (std::size_t q = 0; q < qubits; q++) {
            const std::size_t digit = (k >> (2 * (qubits - 1 - q))) & 3;
            p = kron(p, single_paulis()[digit]);
        }
        basis.col(static_cast<Eigen::Index>(k)) = norm * vectorize(p);
    }
    return basis;
}

RealMatrix superop_to_ptm(const ComplexMatrix &superop, std::size_t qubits) {
    const ComplexMatrix b = pauli_basis(qubits);
    if (superop.rows() != b.rows() || superop.cols() != b.cols()) {
        throw DimensionError("superop_to_ptm: size does not match qubit count");
    }
    const ComplexMatrix r = b.adjoint() * superop * b;
    return r.real();
}

ComplexMatrix ptm_to_superop(const RealMatrix &ptm, std::size_t qubits) {
    const ComplexMatrix b = pauli_basis(qubits);
    if (ptm.rows() != b.rows() || ptm.cols() != b.cols()) {
        throw DimensionError("ptm_to_superop: size does not match qubit count");
    }
    return b * ptm.cast<Complex>() * b.adjoint();
}

RealMatrix single_qubit_ptm(const NoiseSpec &spec, std::size_t qubit) {
    switch (spec.kind) {
        case NoiseKind::None: return RealMatrix::Identity(4, 4);
        case NoiseKind::Pauli: return pauli_mixture_ptm(spec.pauli);
        case NoiseKind::Depolarizing: {
            const double p = spec.depolarizing_p;
            return pauli_mixture_ptm({1 - 3 * p, p, p, p});
        }
        case NoiseKind::AmplitudeDamping: return amplitude_damping_ptm(spec.gamma);
        case NoiseKind::Coherent: return coherent_ptm(spec.delta_t);
        case NoiseKind::Statistical: return statistical_ptm(spec, qubit);
    }
    throw std::logic_error("unhandled NoiseKind");
}

ComplexMatrix noise_superop(const NoiseSpec &spec, std::size_t qubits) {
    spec.validate();
    const std::size_t dim = std::size_t{1} << qubits;
    if (spec.kind == NoiseKind::None || spec.scale == 0) {
        return identity(dim * dim);
    }
    RealMatrix ptm = RealMatrix::Identity(1, 1);
    for (std::size_t q = 0; q < qubits; q++) {
        const RealMatrix single = single_qubit_ptm(spec, q);
        RealMatrix next(ptm.rows() * 4, ptm.cols() * 4);
        for (Eigen::Index i = 0; i < ptm.rows(); i++) {
            for (Eigen::Index j = 0; j < ptm.cols(); j++) {
                next.block(i * 4, j * 4, 4, 4) = ptm(i, j) * single;
            }
        }
        ptm = std::move(next);
    }
    const ComplexMatrix full = ptm_to_superop(ptm, qubits);
    return (1 - spec.scale) * identity(dim * dim) + spec.scale * full;
}

double avg_gate_fidelity(const ComplexMatrix &noisy, const ComplexMatrix &ideal, std::size_t dim) {
    const auto d2 = static_cast<Eigen::Index>(dim * dim);
    if (noisy.rows() != d2 || noisy.cols() != d2 || ideal.rows() != d2 || ideal.cols() != d2) {
        throw DimensionError("avg_gate_fidelity: superoperators must both be d^2 x d^2");
    }
    const double d = static_cast<double>(dim);
    const double f_pro = (ideal.adjoint() * noisy).trace().real() / (d * d);
    return (d * f_pro + 1) / (d + 1);
}

}  // namespace nrqae
