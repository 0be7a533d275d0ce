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

#include "nrqae/perturb.hpp"

#include <cmath>
#include <numbers>

namespace nrqae {

namespace {

constexpr double kPi = std::numbers::pi;

struct Match {
    std::size_t index = 0;
    double overlap = 0;
};

Match best_overlap(const Spectrum &spec, const ComplexVector &target) {
    Match m;
    for (std::size_t k = 0; k < spec.size(); k++) {
        const double o = std::abs(target.dot(spec[k].vector));
        if (o > m.overlap) {
            m = {k, o};
        }
    }
    return m;
}

// Rotates v so that <<reference|v>> is real and non-negative.
ComplexVector align_phase(const ComplexVector &v, const ComplexVector &reference) {
    const Complex o = reference.dot(v);
    if (std::abs(o) == 0) {
        return v;
    }
    return v * (std::conj(o) / std::abs(o));
}

double fold_phase(Complex z) {
    const double p = phase_0_2pi(z);
    return p > kPi ? 2 * kPi - p : p;
}

}  // namespace

ComplexMatrix SubspaceBasis::matrix() const {
    ComplexMatrix m(vectors[0].size(), 4);
    for (int k = 0; k < 4; k++) {
        m.col(k) = vectors[static_cast<std::size_t>(k)];
    }
    return m;
}

SubspaceBasis subspace_basis(const EstimationProblem &problem) {
    const ComplexVector &target = problem.target();
    const ComplexVector &psi = problem.psi();
    ComplexVector perp = psi - target.dot(psi) * target;
    if (perp.norm() < 1e-9) {
        throw DegenerateProblemError("psi and the target state are parallel; the invariant plane is degenerate");
    }
    perp.normalize();

    ComplexMatrix plane(target.size(), 2);
    plane.col(0) = target;
    plane.col(1) = perp;
    const ComplexMatrix restricted = plane.adjoint() * grover(problem) * plane;
    const Spectrum spec = eig_dense(restricted);

    // The restricted operator has determinant 1, so its eigenvalues are
    // e^{+-i theta_G}; order them so phi_plus carries the phase in (0, pi).
    std::size_t plus = 0;
    if (std::sin(std::arg(spec[0].value)) < std::sin(std::arg(spec[1].value))) {
        plus = 1;
    }
    SubspaceBasis b;
    b.phi_plus = plane * spec[plus].vector;
    b.phi_minus = plane * spec[1 - plus].vector;
    b.theta_g = std::abs(std::arg(spec[plus].value));
    if (std::abs(std::sin(b.theta_g)) < 1e-9) {
        throw DegenerateProblemError("G has a degenerate spectrum on the invariant plane");
    }
    const ComplexVector *states[2] = {&b.phi_plus, &b.phi_minus};
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            b.vectors[static_cast<std::size_t>(2 * i + j)] =
                vectorize(*states[i] * states[j]->adjoint());
        }
    }
    return b;
}

PerturbationReport perturbation_report(const EstimationProblem &problem, const NoiseSpec &noise, double s,
                                       std::span<const std::size_t> depths) {
    PerturbationReport r;
    r.s = s;
    const SubspaceBasis basis = subspace_basis(problem);
    const ComplexVector &rho_i1 = basis.vectors[1];
    const ComplexVector &rho_i2 = basis.vectors[2];

    NoiseSpec scaled = noise;
    scaled.scale = s;
    const NoisyCircuit circuit(problem, scaled);
    const ComplexMatrix &ideal = circuit.ideal_layer();
    const ComplexMatrix delta = circuit.layer() - ideal;
    r.eps = frob_norm(delta);

    r.lambda1_ideal = rho_i1.dot(ideal * rho_i1);
    r.lambda2_ideal = rho_i2.dot(ideal * rho_i2);

    const Spectrum spec = eig_dense(circuit.layer());
    const Match m1 = best_overlap(spec, rho_i1);
    const Match m2 = best_overlap(spec, rho_i2);
    r.overlap1 = m1.overlap;
    r.overlap2 = m2.overlap;
    r.flagged = m1.overlap < 0.5 || m2.overlap < 0.5 || m1.index == m2.index;

    r.lambda1 = spec[m1.index].value;
    r.lambda2 = spec[m2.index].value;
    const Complex shift1 = rho_i1.dot(delta * rho_i1);
    const Complex shift2 = rho_i2.dot(delta * rho_i2);
    r.first_order_shift = std::abs(shift1);
    r.lambda1_first_order = r.lambda1_ideal + shift1;
    r.lambda2_first_order = r.lambda2_ideal + shift2;
    r.lemma1_residual1 = std::abs(r.lambda1 - r.lambda1_first_order);
    r.lemma1_residual2 = std::abs(r.lambda2 - r.lambda2_first_order);

    const ComplexVector rho1 = align_phase(spec[m1.index].vector, rho_i1);
    const ComplexVector rho2 = align_phase(spec[m2.index].vector, rho_i2);
    const ComplexVector rt = vectorize(rho_tilde(problem));
    r.c = rho_i1.dot(rt);
    r.c1 = rho1.dot(rt);
    r.c2 = rho2.dot(rt);
    r.c1_error = std::abs(r.c1 - r.c);
    r.c2_error = std::abs(r.c2 - std::conj(r.c));
    r.delta1_norm = (rho1 - rho_i1).norm();
    r.delta2_norm = (rho2 - rho_i2).norm();
    r.lemma2_residual = (rt - r.c1 * rho1 - r.c2 * rho2).norm();

    r.theta_ideal = fold_phase(r.lambda1_ideal);
    r.theta_pert = fold_phase(r.lambda1);
    r.theta_shift = std::abs(r.theta_pert - r.theta_ideal);

    const double w1 = std::norm(r.c1);
    const double w2 = std::norm(r.c2);
    r.depths.assign(depths.begin(), depths.end());
    for (std::size_t n : depths) {
        const Complex model =
            w1 * std::pow(r.lambda1, static_cast<double>(n)) + w2 * std::pow(r.lambda2, static_cast<double>(n));
        const double err = std::abs(Complex(exact_t_superop(circuit, n), 0) - model);
        r.t_model_error.push_back(err);
        r.max_t_model_error = std::max(r.max_t_model_error, err);
    }
    return r;
}

double perturbed_channel_phase(const NoisyCircuit &circuit) {
    const SubspaceBasis basis = subspace_basis(circuit.problem());
    const Spectrum spec = eig_dense(circuit.layer());
    const Match m = best_overlap(spec, basis.vectors[1]);
    return fold_phase(spec[m.index].value);
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("loglog_slope: x and y differ in length");
    }
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < x.size(); k++) {
        if (x[k] > 0 && y[k] > 0) {
            lx.push_back(std::log(x[k]));
            ly.push_back(std::log(y[k]));
        }
    }
    if (lx.size() < 2) {
        throw std::invalid_argument("loglog_slope: fewer than two positive points");
    }
    const double count = static_cast<double>(lx.size());
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < lx.size(); k++) {
        mx += lx[k];
        my += ly[k];
    }
    mx /= count;
    my /= count;
    double sxy = 0, sxx = 0;
    for (std::size_t k = 0; k < lx.size(); k++) {
        sxy += (lx[k] - mx) * (ly[k] - my);
        sxx += (lx[k] - mx) * (lx[k] - mx);
    }
    return sxy / sxx;
}

}  // namespace nrqae
