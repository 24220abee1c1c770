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
#include <numbers>

#include "agf/error.hpp"
#include "agf/noise.hpp"

namespace agf {
namespace {

TEST(NoisePresets, Examples) {
    const auto p0 = parse_noise("depolarizing:0", 2);
    EXPECT_NEAR(exact_average_fidelity(p0.channel), 1.0, 1e-12);
    EXPECT_NEAR(exact_average_fidelity(parse_noise("depolarizing:1", 2).channel), 0.5, 1e-12);
    const auto rot = parse_noise("over_rotation:z," + std::to_string(std::numbers::pi), 2);
    EXPECT_NEAR(exact_average_fidelity(rot.channel), 1.0 / 3.0, 1e-9);
}

TEST(NoisePresets, ClosedFormsMatchOracle) {
    for (int d : {2, 3, 4}) {
        for (const auto &spec : standard_noise_specs()) {
            const auto m = parse_noise(spec, d);
            const double oracle = exact_average_fidelity(m.channel);
            if (m.closed_form) {
                EXPECT_NEAR(*m.closed_form, oracle, 1e-12) << spec << " d=" << d;
            }
            EXPECT_GE(oracle, -1e-12);
            EXPECT_LE(oracle, 1.0 + 1e-12);
        }
    }
}

TEST(NoisePresets, DepolarizingFormula) {
    for (int d : {2, 3, 8}) {
        for (double p : {0.0, 0.25, 0.7, 1.0}) {
            const auto m = parse_noise("depolarizing:" + std::to_string(p), d);
            ASSERT_TRUE(m.closed_form.has_value());
            EXPECT_NEAR(*m.closed_form, 1.0 - p + p / d, 1e-12);
        }
    }
}

TEST(NoisePresets, ShiftAndClockAreWeylPair) {
    const int d = 3;
    const ComplexMatrix x = shift_operator(d), z = clock_operator(d);
    const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / d);
    EXPECT_TRUE(approx_equal(z * x, omega * x * z, 1e-12));
}

TEST(NoisePresets, Errors) {
    EXPECT_THROW(parse_noise("depolarizing:1.5", 2), ParameterError);
    EXPECT_THROW(parse_noise("amplitude_damping:-0.1", 2), ParameterError);
    EXPECT_THROW(parse_noise("over_rotation:w,0.1", 2), ParameterError);
    EXPECT_THROW(parse_noise("depolarizing", 2), ParameterError);
    EXPECT_THROW(parse_noise("bitflop:0.1", 2), ConfigError);
    EXPECT_THROW(parse_noise("identity", 65), ParameterError);
}

TEST(NoisePresets, CompositionAppliesLeftToRight) {
    const auto c = parse_noise("amplitude_damping:0.3+unitary:x", 2);
    EXPECT_FALSE(c.closed_form.has_value());
    // |1><1| decays to 0.3|0><0| + 0.7|1><1|, then X swaps the levels.
    const auto out = apply_channel(c.channel, DensityMatrix::basis(2, 1));
    EXPECT_NEAR(out.matrix()(0, 0).real(), 0.7, 1e-12);
    EXPECT_NEAR(out.matrix()(1, 1).real(), 0.3, 1e-12);
}

TEST(NoisePresets, CanonicalSpecReparses) {
    for (const auto &spec : standard_noise_specs()) {
        const auto a = parse_noise(spec, 2);
        const auto b = parse_noise(a.spec, 2);
        EXPECT_NEAR(exact_average_fidelity(a.channel), exact_average_fidelity(b.channel), 1e-15);
    }
}

}  // namespace
}  // namespace agf
