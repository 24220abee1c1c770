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

#include "agf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "agf/error.hpp"

namespace agf {

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b, double tol) {
    return max_abs_diff(a, b) <= tol;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix kron_power(const ComplexMatrix &a, int t) {
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int i = 0; i < t; ++i) {
        out = kron(out, a);
    }
    return out;
}

double schatten_norm(const ComplexMatrix &m, SchattenP p) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const RealVector &s = svd.singularValues();
    switch (p) {
        case SchattenP::One:
            return s.sum();
        case SchattenP::Two:
            return s.norm();
        case SchattenP::Infinity:
            return s.maxCoeff();
    }
    return 0.0;
}

double frobenius_norm(const ComplexMatrix &m) {
    return std::sqrt(std::max(0.0, (m.adjoint() * m).trace().real()));
}

ComplexVector vec_rows(const ComplexMatrix &m) {
    ComplexVector v(m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            v(i * m.cols() + j) = m(i, j);
        }
    }
    return v;
}

ComplexMatrix unvec_rows(const ComplexVector &v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols) {
        throw DimensionError("unvec_rows: vector length does not match shape");
    }
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = v(i * cols + j);
        }
    }
    return m;
}

Complex hs_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("hs_inner: shape mismatch");
    }
    return (a.conjugate().cwiseProduct(b)).sum();
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix &m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
    // Eigenvalues at roundoff scale are zeros; their square roots would not be.
    const double floor = 1e-14 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    RealVector ev = es.eigenvalues().unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

std::size_t checked_pow(std::size_t base, int exp, std::size_t cap) {
    std::size_t out = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && out > cap / base) {
            throw CapacityError("dimension " + std::to_string(base) + "^" + std::to_string(exp) +
                                " exceeds cap " + std::to_string(cap));
        }
        out *= base;
    }
    if (out > cap) {
        throw CapacityError("dimension " + std::to_string(base) + "^" + std::to_string(exp) +
                            " exceeds cap " + std::to_string(cap));
    }
    return out;
}

}  // namespace agf
