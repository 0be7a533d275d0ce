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

#include "nrqae/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

namespace nrqae {

namespace {

constexpr std::size_t kMaxEigDim = 64;

// Roots of lambda^2 - tr*lambda + det = 0 with eigenvectors taken from
// whichever row of (M - lambda I) gives the better-conditioned null vector.
std::vector<EigenPair> eig_small(const ComplexMatrix &m) {
    std::vector<EigenPair> out;
    if (m.rows() == 0) {
        return out;
    }
    if (m.rows() == 1) {
        ComplexVector v(1);
        v(0) = 1.0;
        out.push_back({m(0, 0), v});
        return out;
    }
    const Complex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    const Complex half_tr = (a + d) / 2.0;
    const Complex disc = std::sqrt(((a - d) / 2.0) * ((a - d) / 2.0) + b * c);
    const Complex lambdas[2] = {half_tr + disc, half_tr - disc};
    const double scale = std::max(1.0, m.norm());
    for (int k = 0; k < 2; k++) {
        const Complex lam = lambdas[k];
        ComplexVector v1(2), v2(2);
        v1 << b, lam - a;
        v2 << lam - d, c;
        ComplexVector v = v1.norm() >= v2.norm() ? v1 : v2;
        if (v.norm() < 1e-14 * scale) {
            // Scalar matrix: every vector is an eigenvector.
            v = ComplexVector::Zero(2);
            v(k) = 1.0;
        }
        out.push_back({lam, v.normalized()});
    }
    return out;
}

}  // namespace

std::vector<Complex> Spectrum::values() const {
    std::vector<Complex> out;
    out.reserve(pairs.size());
    for (const auto &p : pairs) {
        out.push_back(p.value);
    }
    return out;
}

ComplexMatrix identity(std::size_t dim) {
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

ComplexMatrix mat_mul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw DimensionError(
            "mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
            std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    return a * b;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix mat_power(const ComplexMatrix &m, std::size_t n) {
    if (m.rows() != m.cols()) {
        throw DimensionError("mat_power: matrix is not square");
    }
    ComplexMatrix result = identity(static_cast<std::size_t>(m.rows()));
    ComplexMatrix base = m;
    while (n > 0) {
        if (n & 1) {
            result = result * base;
        }
        n >>= 1;
        if (n > 0) {
            base = base * base;
        }
    }
    return result;
}

double frob_norm(const ComplexMatrix &m) {
    return m.norm();
}

double phase_0_2pi(Complex z) {
    double p = std::arg(z);
    if (p < 0) {
        p += 2 * std::numbers::pi;
    }
    if (p >= 2 * std::numbers::pi - 1e-12) {
        p = 0;
    }
    return p;
}

Spectrum eig_dense(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("eig_dense: matrix is not square");
    }
    if (static_cast<std::size_t>(m.rows()) > kMaxEigDim) {
        throw DimensionError("eig_dense: dimension " + std::to_string(m.rows()) + " exceeds 64");
    }

    Spectrum spec;
    if (m.rows() <= 2) {
        spec.pairs = eig_small(m);
    } else {
        Eigen::ComplexEigenSolver<ComplexMatrix> solver;
        solver.setMaxIterations(64 * static_cast<Eigen::Index>(m.rows()));
        solver.compute(m, true);
        if (solver.info() != Eigen::Success) {
            throw ConvergenceError("eig_dense: QR iteration did not converge");
        }
        const auto &vals = solver.eigenvalues();
        const auto &vecs = solver.eigenvectors();
        spec.pairs.reserve(static_cast<std::size_t>(m.rows()));
        for (Eigen::Index k = 0; k < m.rows(); k++) {
            spec.pairs.push_back({vals(k), vecs.col(k).normalized()});
        }
    }

    // Quantize the modulus so near-equal moduli compare by phase and the
    // comparator stays a strict weak ordering.
    auto key = [](const EigenPair &p) {
        return std::pair{-std::llround(std::abs(p.value) * 1e9), phase_0_2pi(p.value)};
    };
    std::stable_sort(spec.pairs.begin(), spec.pairs.end(),
                     [&](const EigenPair &x, const EigenPair &y) { return key(x) < key(y); });
    return spec;
}

bool is_unitary(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m.adjoint() * m - identity(static_cast<std::size_t>(m.rows()))).norm() < tol;
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).norm() < tol;
}

}  // namespace nrqae
