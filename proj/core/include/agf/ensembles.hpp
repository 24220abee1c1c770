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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agf/quantum.hpp"

namespace agf {

/// Finite uniform-weight set of d x d unitaries. A product ensemble
/// (tensor product of factor ensembles) is stored factored and its members
/// are materialized on demand; member i uses mixed-radix digits of i with
/// the first factor most significant.
class UnitaryEnsemble {
   public:
    UnitaryEnsemble(std::string label, std::vector<UnitaryOperator> members);
    static UnitaryEnsemble product(std::string label, std::vector<UnitaryEnsemble> factors);

    const std::string &label() const noexcept { return label_; }
    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return size_; }
    bool is_product() const noexcept { return !factors_.empty(); }

    UnitaryOperator member(std::size_t i) const;

   private:
    UnitaryEnsemble() = default;
    std::string label_;
    int dim_ = 0;
    std::size_t size_ = 0;
    std::vector<UnitaryOperator> members_;
    std::vector<UnitaryEnsemble> factors_;
};

/// Names: clifford1q, pauli1q, identity_only (dimension `d`), and
/// clifford_product:<q> / pauli_product:<q> for q-fold tensor powers of the
/// single-qubit sets. Unknown names throw ConfigError.
UnitaryEnsemble builtin_ensemble(std::string_view name, int d = 2);

/// The 24-element single-qubit Clifford group, enumerated by breadth-first
/// closure over {H, S} modulo global phase.
UnitaryEnsemble clifford1q();
UnitaryEnsemble pauli1q();

/// Sum over the t-fold conjugation action (1/s) sum_i U_i^{⊗t} M U_i^{†⊗t}
/// on d^t x d^t matrices.
class MomentOperator {
   public:
    /// Precomputes U_i^{⊗t} for all members; throws CapacityError if the
    /// total exceeds `entry_cap` complex entries.
    MomentOperator(const UnitaryEnsemble &e, int t, std::size_t entry_cap = std::size_t{1} << 26);

    int dim() const noexcept { return dim_; }
    int tensor_power() const noexcept { return t_; }
    std::size_t ensemble_size() const noexcept { return powers_.size(); }
    /// d^t, the side of the matrices the operator acts on.
    std::size_t side() const noexcept { return side_; }

    ComplexMatrix apply(const ComplexMatrix &m) const;
    ComplexMatrix apply_adjoint(const ComplexMatrix &m) const;
    /// (1/s) sum_i K_i ⊗ conj(K_i) in the row-major vec convention.
    ComplexMatrix dense(std::size_t dense_cap = 4096) const;

   private:
    int dim_;
    int t_;
    std::size_t side_;
    std::vector<ComplexMatrix> powers_;
};

/// Orthogonal (Hilbert-Schmidt) projector onto span{P_pi : pi in S_t}, which
/// equals the Haar t-fold twirl. Built from the Gram matrix
/// G[pi, sigma] = d^{#cycles(pi^{-1} sigma)} with a pseudo-inverse, so d < t
/// is handled by rank truncation.
class HaarTwirlProjector {
   public:
    HaarTwirlProjector(int d, int t, int max_t = 4);

    int dim() const noexcept { return dim_; }
    int tensor_power() const noexcept { return t_; }
    std::size_t side() const noexcept { return side_; }
    const std::vector<std::vector<int>> &permutations() const noexcept { return perms_; }
    const Eigen::MatrixXd &gram() const noexcept { return gram_; }
    const Eigen::MatrixXd &gram_pinv() const noexcept { return gram_pinv_; }
    int rank() const noexcept { return rank_; }

    /// P_pi |i_1 ... i_t> = |i'> with i'_{pi(k)} = i_k.
    ComplexMatrix permutation_operator(std::size_t index) const;
    ComplexMatrix apply(const ComplexMatrix &m) const;
    ComplexMatrix dense(std::size_t dense_cap = 4096) const;

   private:
    int dim_;
    int t_;
    std::size_t side_;
    std::vector<std::vector<int>> perms_;
    std::vector<std::vector<std::uint32_t>> maps_;
    Eigen::MatrixXd gram_;
    Eigen::MatrixXd gram_pinv_;
    int rank_ = 0;
};

int cycle_count(std::span<const int> perm);

enum class LambdaMethod { Auto, DenseSvd, PowerIteration };

struct TpeOptions {
    std::size_t dense_cap = 4096;
    double tolerance = 1e-8;
    int max_iterations = 10000;
    LambdaMethod method = LambdaMethod::Auto;
    /// Upper limit on s * d^{3t}, the per-iteration cost of matrix-free power
    /// iteration.
    double work_cap = 4e9;
};

struct DesignReportEntry {
    int t = 0;
    double lambda = 0.0;
    std::string method;
    int iterations = 0;
    double residual = 0.0;
};

struct DesignEpsilon {
    double epsilon = 0.0;
    /// epsilon > 2 certifies nothing in diamond norm.
    bool vacuous = false;
};

struct DesignReport {
    std::string label;
    int d = 0;
    std::size_t s = 0;
    std::vector<DesignReportEntry> rows;
    /// Present when t = 2 was among the requested powers.
    std::optional<DesignEpsilon> epsilon2;
};

/// Largest singular value of G - I_Haar for the t-copy moment operator.
/// Throws CapacityError when neither route fits, ConvergenceError when power
/// iteration stalls.
DesignReportEntry tpe_lambda(const UnitaryEnsemble &e, int t, const TpeOptions &opts = {});

/// lambda_2 d^4.
DesignEpsilon design_epsilon_from_lambda(double lambda2, int d);

DesignReport check_design(const UnitaryEnsemble &e, std::span<const int> ts, const TpeOptions &opts = {});

}  // namespace agf
