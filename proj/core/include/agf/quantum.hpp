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

#include <vector>

#include "agf/linalg.hpp"
#include "agf/random.hpp"

namespace agf {

/// Dense simulation caps dimensions by default (see noise_preset).
inline constexpr int kDefaultMaxDimension = 64;

class UnitaryOperator {
   public:
    /// Throws ValidationError unless U U^dagger = I within `tol` (entrywise max).
    explicit UnitaryOperator(ComplexMatrix m, double tol = kMatrixTolerance);

    const ComplexMatrix &matrix() const noexcept { return m_; }
    int dim() const noexcept { return static_cast<int>(m_.rows()); }
    UnitaryOperator adjoint() const;
    static UnitaryOperator identity(int d);

   private:
    struct Trusted {};
    UnitaryOperator(ComplexMatrix m, Trusted) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

class DensityMatrix {
   public:
    /// Hermitian and unit trace within 1e-10, minimum eigenvalue >= -1e-8.
    explicit DensityMatrix(ComplexMatrix m);

    static DensityMatrix pure(const ComplexVector &psi);
    static DensityMatrix basis(int d, int j);
    static DensityMatrix maximally_mixed(int d);

    const ComplexMatrix &matrix() const noexcept { return m_; }
    int dim() const noexcept { return static_cast<int>(m_.rows()); }

   private:
    ComplexMatrix m_;
};

/// CPTP map rho -> sum_k A_k rho A_k^dagger on d x d matrices.
class KrausChannel {
   public:
    /// Requires 1 <= |ops| <= d^2 and sum_k A_k^dagger A_k = I within 1e-9.
    explicit KrausChannel(std::vector<ComplexMatrix> ops);

    static KrausChannel identity(int d);
    static KrausChannel unitary(const ComplexMatrix &w);

    /// `then` after `first`. Kraus products are re-diagonalized through the
    /// Choi matrix whenever their count exceeds d^2.
    static KrausChannel compose(const KrausChannel &first, const KrausChannel &then);

    int dim() const noexcept { return dim_; }
    const std::vector<ComplexMatrix> &kraus_ops() const noexcept { return ops_; }

   private:
    int dim_ = 0;
    std::vector<ComplexMatrix> ops_;
};

/// Minimal Kraus set from the Choi matrix eigendecomposition.
std::vector<ComplexMatrix> canonical_kraus(const std::vector<ComplexMatrix> &ops);

DensityMatrix apply_channel(const KrausChannel &ch, const DensityMatrix &rho);

/// <0| V^dagger Lambda(V|0><0|V^dagger) V |0>, computed as sum_k |<psi|A_k|psi>|^2
/// with psi = V|0>.
double gate_fidelity(const KrausChannel &ch, const UnitaryOperator &v);

/// (sum_k |Tr A_k|^2 + d) / (d^2 + d).
double exact_average_fidelity(const KrausChannel &ch);

/// Ginibre matrix, Householder QR, then Q diag(R_ii / |R_ii|) so that the
/// triangular factor has positive real diagonal; the result is Haar
/// distributed. Consumes 2 d^2 normals from `entropy`.
UnitaryOperator haar_random_unitary(int d, EntropySource &entropy);

/// Bits spent by one haar_random_unitary(d) call.
std::uint64_t haar_sample_bits(int d);

/// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 with eigenvalue-clamped square roots.
double state_fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);

/// ||rho - sigma||_1 / 2.
double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma);

/// Random mixed state G G^dagger / Tr(G G^dagger) from a Ginibre matrix.
DensityMatrix random_density_matrix(int d, EntropySource &entropy);

}  // namespace agf
