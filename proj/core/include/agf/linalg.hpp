// Copyright 2026 The AGF Workbench Authors
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

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

namespace agf {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kMatrixTolerance = 1e-10;

/// Entrywise max-norm comparison. Shapes must match for equality.
bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b, double tol = kMatrixTolerance);

/// Largest |a_ij - b_ij|; infinity when shapes differ.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// a ⊗ a ⊗ ... (t factors). t = 0 gives the 1x1 identity.
ComplexMatrix kron_power(const ComplexMatrix &a, int t);

enum class SchattenP { One, Two, Infinity };

/// l_p norm of the singular-value vector.
double schatten_norm(const ComplexMatrix &m, SchattenP p);

/// Hilbert-Schmidt route for p = 2: sqrt(Tr(A^dagger A)).
double frobenius_norm(const ComplexMatrix &m);

/// Row-major vectorization: vec(A M B) = (A ⊗ B^T) vec(M).
ComplexVector vec_rows(const ComplexMatrix &m);
ComplexMatrix unvec_rows(const ComplexVector &v, Eigen::Index rows, Eigen::Index cols);

/// <A, B>_HS = Tr(A^dagger B).
Complex hs_inner(const ComplexMatrix &a, const ComplexMatrix &b);

/// Principal square root of a Hermitian PSD matrix, negative eigenvalues
/// clamped to zero.
ComplexMatrix hermitian_sqrt(const ComplexMatrix &m);

/// Integer power helper for dimensions; throws CapacityError on overflow of
/// the given cap.
std::size_t checked_pow(std::size_t base, int exp, std::size_t cap);

}  // namespace agf
