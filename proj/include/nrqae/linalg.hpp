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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace nrqae {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

/// Thrown when two operands have incompatible shapes.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when the eigensolver fails to converge within its iteration budget.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EigenPair {
    Complex value;
    ComplexVector vector;  // unit 2-norm
};

/// Full eigendecomposition of a square matrix.
///
/// Pairs are sorted by descending modulus, then by phase in [0, 2pi).
/// Moduli equal to within 1e-9 are treated as equal for ordering purposes.
struct Spectrum {
    std::vector<EigenPair> pairs;

    std::size_t size() const { return pairs.size(); }
    const EigenPair &operator[](std::size_t k) const { return pairs[k]; }
    std::vector<Complex> values() const;
};

ComplexMatrix identity(std::size_t dim);

ComplexMatrix mat_mul(const ComplexMatrix &a, const ComplexMatrix &b);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// m^n by repeated squaring. m^0 is the identity.
ComplexMatrix mat_power(const ComplexMatrix &m, std::size_t n);

double frob_norm(const ComplexMatrix &m);

/// Hessenberg reduction followed by shifted QR to complex Schur form, then
/// back-substitution for eigenvectors. Dimensions up to 64 are supported;
/// dimension <= 2 is solved from the characteristic quadratic.
Spectrum eig_dense(const ComplexMatrix &m);

bool is_unitary(const ComplexMatrix &m, double tol = 1e-10);
bool is_hermitian(const ComplexMatrix &m, double tol = 1e-10);

/// Phase of z mapped into [0, 2pi).
double phase_0_2pi(Complex z);

}  // namespace nrqae
