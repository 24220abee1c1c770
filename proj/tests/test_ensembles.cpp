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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "agf/bounds.hpp"
#include "agf/ensembles.hpp"
#include "agf/error.hpp"
#include "agf/noise.hpp"

namespace agf {
namespace {

bool equal_up_to_phase(const ComplexMatrix &a, const ComplexMatrix &b) {
    const Complex ov = hs_inner(a, b) / static_cast<double>(a.rows());
    return std::abs(std::abs(ov) - 1.0) < 1e-9 && approx_equal(a * ov, b, 1e-9);
}

ComplexMatrix random_matrix(int n, EntropySource &e) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m(i, j) = Complex(e.normal(), e.normal());
    }
    return m;
}

TEST(Builtins, Sizes) {
    EXPECT_EQ(builtin_ensemble("clifford1q").size(), 24u);
    EXPECT_EQ(builtin_ensemble("pauli1q").size(), 4u);
    const auto id = builtin_ensemble("identity_only", 3);
    EXPECT_EQ(id.size(), 1u);
    EXPECT_EQ(id.dim(), 3);
    const auto cp = builtin_ensemble("clifford_product:2");
    EXPECT_EQ(cp.size(), 576u);
    EXPECT_EQ(cp.dim(), 4);
    EXPECT_THROW(builtin_ensemble("no_such_set"), ConfigError);
}

TEST(Builtins, CliffordIsAGroupModuloPhase) {
    const auto c = clifford1q();
    std::vector<ComplexMatrix> m;
    for (std::size_t i = 0; i < c.size(); ++i) m.push_back(c.member(i).matrix());
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) EXPECT_FALSE(equal_up_to_phase(m[i], m[j]));
    }
    for (const auto &a : m) {
        for (const auto &b : m) {
            bool found = false;
            for (const auto &c2 : m) found = found || equal_up_to_phase(a * b, c2);
            EXPECT_TRUE(found);
        }
    }
}

TEST(Builtins, ProductMembersUseMixedRadixOrder) {
    const auto c = clifford1q();
    const auto cp = builtin_ensemble("clifford_product:2");
    for (std::size_t i : {0u, 1u, 25u, 300u, 575u}) {
        const ComplexMatrix expect = kron(c.member(i / 24).matrix(), c.member(i % 24).matrix());
        EXPECT_TRUE(approx_equal(cp.member(i).matrix(), expect));
    }
}

TEST(MomentOperator, IdentityEnsembleIsIdentitySuperoperator) {
    const MomentOperator g(builtin_ensemble("identity_only", 2), 1);
    const ComplexMatrix dense = g.dense();
    EXPECT_TRUE(approx_equal(dense, ComplexMatrix::Identity(4, 4)));
}

TEST(MomentOperator, PauliTwirlKillsTracelessPaulis) {
    const MomentOperator g(pauli1q(), 1);
    ComplexMatrix x(2, 2);
    x << 0, 1, 1, 0;
    EXPECT_TRUE(approx_equal(g.apply(x), ComplexMatrix::Zero(2, 2)));
    EXPECT_TRUE(approx_equal(g.apply(ComplexMatrix::Identity(2, 2)), ComplexMatrix::Identity(2, 2)));
}

TEST(MomentOperator, DenseAndMatrixFreeAgree) {
    EntropySource e(3);
    for (int t : {1, 2}) {
        const MomentOperator g(clifford1q(), t);
        const ComplexMatrix dense = g.dense();
        const int side = static_cast<int>(g.side());
        for (int trial = 0; trial < 10; ++trial) {
            const ComplexMatrix m = random_matrix(side, e);
            const ComplexVector via_dense = dense * vec_rows(m);
            EXPECT_TRUE(approx_equal(unvec_rows(via_dense, side, side), g.apply(m), 1e-9));
        }
    }
}

TEST(MomentOperator, UnitalTracePreservingAndFixesPermutations) {
    EntropySource e(5);
    const MomentOperator g(clifford1q(), 2);
    const HaarTwirlProjector p(2, 2);
    EXPECT_TRUE(approx_equal(g.apply(ComplexMatrix::Identity(4, 4)), ComplexMatrix::Identity(4, 4), 1e-12));
    const ComplexMatrix m = random_matrix(4, e);
    EXPECT_NEAR(std::abs(g.apply(m).trace() - m.trace()), 0.0, 1e-9);
    for (std::size_t i = 0; i < p.permutations().size(); ++i) {
        const ComplexMatrix perm = p.permutation_operator(i);
        EXPECT_TRUE(approx_equal(g.apply(perm), perm, 1e-12));
    }
}

TEST(MomentOperator, CliffordTwoFoldTwirlEqualsHaar) {
    EntropySource e(7);
    const MomentOperator g(clifford1q(), 2);
    const HaarTwirlProjector p(2, 2);
    for (int i = 0; i < 5; ++i) {
        const ComplexMatrix m = random_matrix(4, e);
        EXPECT_TRUE(approx_equal(g.apply(m), p.apply(m), 1e-9));
    }
}

TEST(HaarTwirl, FirstMomentIsTraceOverDimension) {
    EntropySource e(9);
    const HaarTwirlProjector p(3, 1);
    const ComplexMatrix m = random_matrix(3, e);
    EXPECT_TRUE(approx_equal(p.apply(m), ComplexMatrix::Identity(3, 3) * (m.trace() / 3.0), 1e-12));
}

TEST(HaarTwirl, SwapIsFixed) {
    const HaarTwirlProjector p(2, 2);
    ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) swap(2 * i + j, 2 * j + i) = 1.0;
    }
    EXPECT_TRUE(approx_equal(p.apply(swap), swap, 1e-12));
}

TEST(HaarTwirl, ProjectorIsIdempotentAndSelfAdjoint) {
    const HaarTwirlProjector p(2, 2);
    const ComplexMatrix dense = p.dense();
    EXPECT_TRUE(approx_equal(dense * dense, dense, 1e-10));
    EXPECT_TRUE(approx_equal(dense.adjoint(), dense, 1e-10));
}

TEST(HaarTwirl, RankTruncatesWhenDimensionBelowPower) {
    EXPECT_EQ(HaarTwirlProjector(2, 3).rank(), 5);
    EXPECT_EQ(HaarTwirlProjector(3, 3).rank(), 6);
    EXPECT_THROW(HaarTwirlProjector(2, 5), CapacityError);
}

TEST(HaarTwirl, MatchesMonteCarlo) {
    // E[U⊗U |00><01| U†⊗U†] for d = 2 over 10^6 Haar draws.
    const HaarTwirlProjector p(2, 2);
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 1) = 1.0;
    const ComplexMatrix expect = p.apply(m);
    EntropySource e(11);
    const int n = 1000000;
    ComplexMatrix acc = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < n; ++i) {
        const ComplexMatrix u = haar_random_unitary(2, e).matrix();
        const ComplexVector a = kron(u.col(0), u.col(0));
        const ComplexVector b = kron(u.col(0), u.col(1));
        acc += a * b.adjoint();
    }
    acc /= static_cast<double>(n);
    // Entries are bounded by 1 in modulus; 5 / sqrt(n) is a safe envelope.
    EXPECT_LE(max_abs_diff(acc, expect), 5.0 / std::sqrt(static_cast<double>(n)));
}

TEST(TpeLambda, ExactDesigns) {
    EXPECT_LE(tpe_lambda(pauli1q(), 1).lambda, 1e-10);
    EXPECT_LE(tpe_lambda(clifford1q(), 1).lambda, 1e-10);
    EXPECT_LE(tpe_lambda(clifford1q(), 2).lambda, 1e-10);
    EXPECT_LE(tpe_lambda(clifford1q(), 3).lambda, 1e-10);
}

TEST(TpeLambda, NonDesigns) {
    EXPECT_GT(tpe_lambda(pauli1q(), 2).lambda, 0.01);
    EXPECT_NEAR(tpe_lambda(builtin_ensemble("identity_only", 2), 1).lambda, 1.0, 1e-9);
    // The single-qubit Clifford group fails to be a 4-design.
    EXPECT_NEAR(tpe_lambda(clifford1q(), 4).lambda, 1.0, 1e-9);
}

TEST(TpeLambda, MonotoneInPower) {
    for (const auto &e : {pauli1q(), clifford1q()}) {
        double prev = 0.0;
        for (int t = 1; t <= 3; ++t) {
            const double l = tpe_lambda(e, t).lambda;
            EXPECT_GE(l + 1e-9, prev);
            prev = l;
        }
    }
}

TEST(TpeLambda, PowerIterationAgreesWithDense) {
    TpeOptions dense;
    dense.method = LambdaMethod::DenseSvd;
    TpeOptions power;
    power.method = LambdaMethod::PowerIteration;
    for (int t : {2, 3}) {
        const auto a = tpe_lambda(pauli1q(), t, dense);
        const auto b = tpe_lambda(pauli1q(), t, power);
        EXPECT_EQ(a.method, "dense-svd");
        EXPECT_EQ(b.method, "power-iteration");
        EXPECT_NEAR(a.lambda, b.lambda, 1e-6);
    }
}

TEST(TpeLambda, CapacityExceeded) {
    TpeOptions tiny;
    tiny.dense_cap = 16;
    tiny.work_cap = 10;
    EXPECT_THROW(tpe_lambda(clifford1q(), 3, tiny), CapacityError);
}

TEST(DesignEpsilon, Examples) {
    EXPECT_DOUBLE_EQ(design_epsilon_from_lambda(0.0, 2).epsilon, 0.0);
    EXPECT_NEAR(design_epsilon_from_lambda(1e-6, 2).epsilon, 1.6e-5, 1e-15);
    const auto v = design_epsilon_from_lambda(0.1, 8);
    EXPECT_NEAR(v.epsilon, 409.6, 1e-9);
    EXPECT_TRUE(v.vacuous);
}

TEST(CheckDesign, ReportsRequestedPowers) {
    const std::vector<int> ts{1, 2};
    const auto r = check_design(clifford1q(), ts);
    ASSERT_EQ(r.rows.size(), 2u);
    ASSERT_TRUE(r.epsilon2.has_value());
    EXPECT_FALSE(r.epsilon2->vacuous);
    const std::vector<int> t1{1};
    EXPECT_GT(check_design(builtin_ensemble("identity_only", 2), t1).rows[0].lambda, 0.0);
}

TEST(DesignInvariants, FirstMomentGapWithinBound) {
    const auto c = clifford1q();
    const double lambda2 = tpe_lambda(c, 2).lambda;
    for (const auto &spec : standard_noise_specs()) {
        const auto noise = parse_noise(spec, 2);
        const double gap = std::abs(ensemble_moment(noise.channel, c, 1, 0.0) - exact_average_fidelity(noise.channel));
        EXPECT_LE(gap, lambda2 * 2.0 * 2.0 + 1e-9) << spec;
    }
}

}  // namespace
}  // namespace agf
