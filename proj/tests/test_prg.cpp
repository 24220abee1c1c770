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
#include "agf/error.hpp"
#include "agf/gf2m.hpp"
#include "agf/prg.hpp"

namespace agf {
namespace {

TEST(PlannerCeil, ForgivesRoundoff) {
    EXPECT_EQ(planner_ceil(16.0 * 1.0 / 0.04), 400.0);
    EXPECT_EQ(planner_ceil(400.0000001), 401.0);
    EXPECT_EQ(planner_ceil(11.46), 12.0);
}

TEST(ThetaText, RoundTrips) {
    EXPECT_EQ(Theta::parse("0.25").log2_inv(), 2.0);
    EXPECT_NEAR(Theta::parse("2^-100").log2_inv(), 100.0, 1e-12);
    EXPECT_EQ(Theta::from_value(0.25).to_string(), "0.25");
    EXPECT_THROW(Theta::parse("1.5"), ParameterError);
    EXPECT_THROW(Theta::from_value(0.0), ParameterError);
}

TEST(KwiseSeedLength, Examples) {
    EXPECT_EQ(kwise_seed_length(16, 1u << 16, Theta::from_log2_inv(20)), 68u);
    EXPECT_EQ(kwise_seed_length(4, 16, Theta::from_log2_inv(10)), 30u);
    EXPECT_EQ(kwise_seed_length(2, 4, Theta::from_value(0.5)), 6u);
    EXPECT_THROW(kwise_seed_length(1, 4, Theta::from_value(0.5)), ParameterError);
}

TEST(SamplingSeedLength, Examples) {
    EXPECT_EQ(sampling_seed_length(0.5, 4, 2, Theta::from_value(0.25)), 8u);
    EXPECT_EQ(sampling_seed_length(0.5, 4, 1, Theta::from_log2_inv(7)), 14u);
    EXPECT_EQ(sampling_seed_length(0.05, 6400, 24, Theta::from_log2_inv(16)), 326u);
}

TEST(PlanTape, SmallExample) {
    const auto p = plan_tape(4, 16, Theta::from_value(0.25));
    EXPECT_EQ(p.m, 9);
    EXPECT_EQ(p.r, 18u);
}

TEST(PlanTape, ImplementedLengthWithinConstantFactor) {
    for (std::uint64_t k : {2u, 4u, 16u, 50u, 200u}) {
        for (std::uint64_t n : {16u, 1024u, 27661u, 1u << 20}) {
            if (k > n) continue;
            for (double l2 : {1.0, 10.0, 40.0, 300.0, 5000.0}) {
                const auto p = plan_tape(k, n, Theta::from_log2_inv(l2));
                EXPECT_LE(p.r, 4 * p.fact3_r + 64) << k << " " << n << " " << l2;
            }
        }
    }
}

BitString seed_with(int m, std::uint64_t x, std::uint64_t y) {
    BitString s(2 * m);
    for (int j = 0; j < m; ++j) {
        s.set(j, (x >> j) & 1u);
        s.set(m + j, (y >> j) & 1u);
    }
    return s;
}

TEST(GenerateTape, ZeroHalvesGiveZeroOutput) {
    const Theta th = Theta::from_value(0.25);
    const auto p = plan_tape(4, 16, th);
    for (auto seed : {seed_with(p.m, 0, 0x1ab), seed_with(p.m, 0x1ab, 0)}) {
        const auto tape = generate_tape(4, 16, th, seed);
        for (std::uint64_t i = 1; i <= 16; ++i) EXPECT_FALSE(tape.bit(i));
    }
}

TEST(GenerateTape, WrongSeedLength) {
    EXPECT_THROW(generate_tape(4, 16, Theta::from_value(0.25), BitString(17)), ParameterError);
}

TEST(GenerateTape, MatchesDirectPowering) {
    const Theta th = Theta::from_value(0.25);
    const auto p = plan_tape(4, 16, th);
    const auto &f = GF2mField::standard(p.m);
    CounterStream rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint64_t x = rng.next_u64() & ((1u << p.m) - 1), y = rng.next_u64() & ((1u << p.m) - 1);
        const auto tape = generate_tape(4, 16, th, seed_with(p.m, x, y));
        auto xi = f.one();
        for (std::uint64_t i = 1; i <= 16; ++i) {
            xi = f.mul(xi, f.from_u64(x));
            EXPECT_EQ(tape.bit(i), GF2mField::inner_product(xi, f.from_u64(y)));
        }
    }
}

TEST(GenerateTape, LocalDecodingMatchesBulk) {
    // n far beyond 2m exercises the recurrence path.
    const Theta th = Theta::from_log2_inv(40);
    const std::uint64_t k = 16, n = 5000;
    EntropySource e(5);
    const BitString seed = e.take_bitstring(tape_seed_length(k, n, th));
    const auto tape = generate_tape(k, n, th, seed);
    for (std::uint64_t i = 1; i <= n; ++i) ASSERT_EQ(tape.bit(i), decode_tape_bit(k, n, th, seed, i)) << i;
}

TEST(GenerateTape, KnownAnswer) {
    const Theta th = Theta::from_value(0.25);
    const auto seed = BitString::from_hex("2b5a7", 18);
    const auto tape = generate_tape(4, 16, th, seed);
    const auto again = generate_tape(4, 16, th, seed);
    EXPECT_EQ(tape.bits(), again.bits());
    EXPECT_EQ(tape.to_text(), again.to_text());
    EXPECT_EQ(tape.to_text().substr(0, 16), "16 4 0.25 18 2b5");
}

TEST(ExhaustiveAudit, SmallExample) {
    const auto a = exhaustive_kwise_audit(4, 16, Theta::from_value(0.25));
    EXPECT_TRUE(a.pass);
    EXPECT_EQ(a.seeds, 1u << 18);
    EXPECT_LE(a.max_l1, 0.25);
    EXPECT_LE(a.max_bias, 0.25);
}

TEST(ExhaustiveAudit, EveryFeasibleSmallPoint) {
    int audited = 0;
    for (std::uint64_t n : {2u, 4u, 8u, 16u, 32u}) {
        for (std::uint64_t k : {2u, 3u, 4u, 6u}) {
            if (k > n) continue;
            for (double l2 : {1.0, 2.0, 3.0}) {
                const Theta th = Theta::from_log2_inv(l2);
                const auto p = plan_tape(k, n, th);
                if (p.r > 20) continue;
                double subsets = 0;
                double c = 1;
                for (std::uint64_t j = 1; j <= k; ++j) {
                    c = c * static_cast<double>(n - j + 1) / static_cast<double>(j);
                    subsets += c;
                }
                if (subsets * std::ldexp(1.0, static_cast<int>(p.r)) > 3e9) continue;
                const auto a = exhaustive_kwise_audit(k, n, th);
                EXPECT_TRUE(a.pass) << n << " " << k << " " << l2 << " l1=" << a.max_l1;
                ++audited;
            }
        }
    }
    EXPECT_GE(audited, 10);
}

TEST(ExhaustiveAudit, RefusesLargeSeeds) {
    EXPECT_THROW(exhaustive_kwise_audit(4, 16, Theta::from_log2_inv(10)), CapacityError);
}

TEST(IndexWidth, Rules) {
    EXPECT_EQ(index_width(1), 0u);
    EXPECT_EQ(index_width(4), 2u);
    EXPECT_EQ(index_width(24), 13u);
    EXPECT_EQ(index_width(576), 18u);
}

TEST(SampleIndices, SingletonSetUsesNoBits) {
    const auto tape = BiasedTape::uniform(BitString(8));
    const auto s = sample_indices(tape, 1, 5);
    EXPECT_EQ(s.indices, std::vector<std::uint64_t>(5, 0));
    EXPECT_EQ(s.bits_consumed, 0u);
}

TEST(SampleIndices, PowerOfTwoReadsBinary) {
    // X_1..X_8 = 0 0 0 1 1 0 1 1
    BitString b(8);
    for (int j : {3, 4, 6, 7}) b.set(j, true);
    const auto s = sample_indices(BiasedTape::uniform(b), 4, 4);
    EXPECT_EQ(s.indices, (std::vector<std::uint64_t>{0, 1, 2, 3}));
    EXPECT_EQ(s.bits_consumed, 8u);
    EXPECT_EQ(s.nonuniformity, 0.0);
}

TEST(SampleIndices, ExhaustionIsCapacityError) {
    EXPECT_THROW(sample_indices(BiasedTape::uniform(BitString(7)), 4, 4), CapacityError);
}

TEST(SampleIndices, NonPowerOfTwoIsNearUniform) {
    const std::uint64_t draws = 1000000, s = 24;
    const unsigned w = index_width(s);
    EntropySource e(17);
    const auto tape = BiasedTape::uniform(e.take_bitstring(draws * w));
    const auto sample = sample_indices(tape, s, draws);
    EXPECT_NEAR(sample.nonuniformity, 24.0 / 8192.0, 1e-15);
    std::vector<double> freq(s, 0.0);
    for (auto i : sample.indices) freq[i] += 1.0;
    const double p = 1.0 / s, sd = std::sqrt(draws * p * (1 - p));
    for (std::uint64_t i = 0; i < s; ++i) EXPECT_LE(std::abs(freq[i] - draws * p), 5 * sd) << i;
}

TEST(Ledger, Accumulates) {
    RandomnessLedger l;
    EXPECT_EQ(l.total(), 0u);
    l.record("a", 10);
    l.record("b", 32);
    EXPECT_EQ(l.total(), 42u);
    ASSERT_EQ(l.entries().size(), 2u);
    EXPECT_EQ(l.entries()[0].label, "a");
    RandomnessLedger m;
    m.record("c", 1);
    l.merge(m);
    EXPECT_EQ(l.total(), 43u);
    EXPECT_EQ(l.entries().back().label, "c");
}

TEST(PrgSuite, AllChecksPass) {
    BoundSuiteOptions opts;
    const auto checks = run_prg_suite(4, 16, Theta::from_value(0.25), opts);
    ASSERT_FALSE(checks.empty());
    for (const auto &c : checks) EXPECT_TRUE(c.pass) << c.suite << " " << c.params << " " << c.empirical;
}

}  // namespace
}  // namespace agf
