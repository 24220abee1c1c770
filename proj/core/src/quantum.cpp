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

#include "agf/quantum.hpp"

#include <cmath>
#include <string>

#include "agf/error.hpp"

namespace agf {

namespace {

constexpr double kTraceTolerance = 1e-9;
constexpr double kProbabilitySlack = 1e-9;

void require_same_dim(int a, int b, const char *what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": dimension " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

ComplexMatrix ginibre(int d, EntropySource &entropy) {
    ComplexMatrix g(d, d);
    const double scale = std::sqrt(0.5);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double re = entropy.normal();
            const double im = entropy.normal();
            g(i, j) = Complex(re * scale, im * scale);
        }
    }
    return g;
}

}  // namespace

UnitaryOperator::UnitaryOperator(ComplexMatrix m, double tol) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw ValidationError("unitary must be a non-empty square matrix");
    }
    const auto n = m_.rows();
    const double err = max_abs_diff(m_ * m_.adjoint(), ComplexMatrix::Identity(n, n));
    if (!(err <= tol)) {
        throw ValidationError("matrix is not unitary (max |U U^dagger - I| = " + std::to_string(err) + ")");
    }
}

UnitaryOperator UnitaryOperator::adjoint() const { return UnitaryOperator(m_.adjoint(), Trusted{}); }

UnitaryOperator UnitaryOperator::identity(int d) { return UnitaryOperator(ComplexMatrix::Identity(d, d), Trusted{}); }

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw ValidationError("density matrix must be a non-empty square matrix");
    }
    if (max_abs_diff(m_, m_.adjoint()) > kMatrixTolerance) {
        throw ValidationError("density matrix is not Hermitian");
    }
    if (std::abs(m_.trace() - Complex(1.0, 0.0)) > kMatrixTolerance) {
        throw ValidationError("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8) {
        throw ValidationError("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::pure(const ComplexVector &psi) {
    const ComplexVector n = psi / psi.norm();
    return DensityMatrix(n * n.adjoint());
}

DensityMatrix DensityMatrix::basis(int d, int j) {
    if (j < 0 || j >= d) {
        throw DimensionError("basis index out of range");
    }
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    m(j, j) = 1.0;
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int d) {
    return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) {
        throw ValidationError("channel needs at least one Kraus operator");
    }
    dim_ = static_cast<int>(ops_.front().rows());
    if (dim_ == 0) {
        throw ValidationError("channel dimension must be positive");
    }
    if (ops_.size() > static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_)) {
        throw ValidationError("more than d^2 Kraus operators");
    }
    ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
    for (std::size_t k = 0; k < ops_.size(); ++k) {
        const auto &a = ops_[k];
        if (a.rows() != dim_ || a.cols() != dim_) {
            throw ValidationError("Kraus operator " + std::to_string(k) + " has the wrong shape", static_cast<long>(k));
        }
        sum += a.adjoint() * a;
    }
    const double err = max_abs_diff(sum, ComplexMatrix::Identity(dim_, dim_));
    if (!(err <= kTraceTolerance)) {
        throw ValidationError("Kraus operators are not trace preserving (error " + std::to_string(err) + ")");
    }
}

KrausChannel KrausChannel::identity(int d) { return KrausChannel({ComplexMatrix::Identity(d, d)}); }

KrausChannel KrausChannel::unitary(const ComplexMatrix &w) { return KrausChannel({UnitaryOperator(w).matrix()}); }

std::vector<ComplexMatrix> canonical_kraus(const std::vector<ComplexMatrix> &ops) {
    const auto d = ops.front().rows();
    ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
    for (const auto &a : ops) {
        const ComplexVector v = vec_rows(a);
        choi += v * v.adjoint();
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(choi);
    std::vector<ComplexMatrix> out;
    const double top = std::max(es.eigenvalues().maxCoeff(), 0.0);
    for (Eigen::Index i = es.eigenvalues().size() - 1; i >= 0; --i) {
        const double ev = es.eigenvalues()(i);
        if (ev > 1e-13 * std::max(top, 1.0)) {
            out.push_back(unvec_rows(std::sqrt(ev) * es.eigenvectors().col(i), d, d));
        }
    }
    return out;
}

KrausChannel KrausChannel::compose(const KrausChannel &first, const KrausChannel &then) {
    require_same_dim(first.dim(), then.dim(), "compose");
    std::vector<ComplexMatrix> ops;
    ops.reserve(first.ops_.size() * then.ops_.size());
    for (const auto &b : then.ops_) {
        for (const auto &a : first.ops_) {
            ComplexMatrix p = b * a;
            if (frobenius_norm(p) > 1e-14) {
                ops.push_back(std::move(p));
            }
        }
    }
    const std::size_t d = static_cast<std::size_t>(first.dim());
    if (ops.size() > d * d) {
        ops = canonical_kraus(ops);
    }
    return KrausChannel(std::move(ops));
}

DensityMatrix apply_channel(const KrausChannel &ch, const DensityMatrix &rho) {
    require_same_dim(ch.dim(), rho.dim(), "apply_channel");
    ComplexMatrix out = ComplexMatrix::Zero(ch.dim(), ch.dim());
    for (const auto &a : ch.kraus_ops()) {
        out += a * rho.matrix() * a.adjoint();
    }
    // Symmetrize away roundoff so the result passes the Hermitian check.
    ComplexMatrix herm = 0.5 * (out + out.adjoint());
    return DensityMatrix(std::move(herm));
}

double gate_fidelity(const KrausChannel &ch, const UnitaryOperator &v) {
    require_same_dim(ch.dim(), v.dim(), "gate_fidelity");
    const ComplexVector psi = v.matrix().col(0);
    double p = 0.0;
    for (const auto &a : ch.kraus_ops()) {
        p += std::norm(psi.dot(a * psi));
    }
    if (!(p >= -kProbabilitySlack && p <= 1.0 + kProbabilitySlack)) {
        throw NumericalError("gate fidelity " + std::to_string(p) + " is outside [0, 1]");
    }
    return std::clamp(p, 0.0, 1.0);
}

double exact_average_fidelity(const KrausChannel &ch) {
    const double d = ch.dim();
    double s = 0.0;
    for (const auto &a : ch.kraus_ops()) {
        s += std::norm(a.trace());
    }
    return std::clamp((s + d) / (d * d + d), 0.0, 1.0);
}

UnitaryOperator haar_random_unitary(int d, EntropySource &entropy) {
    if (d < 1) {
        throw ParameterError("haar_random_unitary: d must be >= 1");
    }
    const ComplexMatrix g = ginibre(d, entropy);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &r = qr.matrixQR();
    for (int j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        const Complex phase = mag > 0.0 ? rjj / mag : Complex(1.0, 0.0);
        q.col(j) *= phase;
    }
    return UnitaryOperator(std::move(q), 1e-9);
}

std::uint64_t haar_sample_bits(int d) {
    // 2 d^2 normals, one pair of 53-bit uniforms per two normals.
    const std::uint64_t normals = 2ULL * static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(d);
    return normals * 53ULL;
}

double state_fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
    require_same_dim(rho.dim(), sigma.dim(), "state_fidelity");
    // Tr sqrt(sqrt(rho) sigma sqrt(rho)) is the trace norm of sqrt(rho) sqrt(sigma).
    const ComplexMatrix prod = hermitian_sqrt(rho.matrix()) * hermitian_sqrt(sigma.matrix());
    const double tr = schatten_norm(prod, SchattenP::One);
    return std::clamp(tr * tr, 0.0, 1.0);
}

double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma) {
    require_same_dim(rho.dim(), sigma.dim(), "trace_distance");
    return 0.5 * schatten_norm(rho.matrix() - sigma.matrix(), SchattenP::One);
}

DensityMatrix random_density_matrix(int d, EntropySource &entropy) {
    const ComplexMatrix g = ginibre(d, entropy);
    ComplexMatrix m = g * g.adjoint();
    m /= m.trace().real();
    m = 0.5 * (m + m.adjoint());
    return DensityMatrix(std::move(m));
}

}  // namespace agf
