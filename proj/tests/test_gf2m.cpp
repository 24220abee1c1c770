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

#include <cstdint>
#include <vector>

#include "agf/error.hpp"
#include "agf/gf2m.hpp"
#include "agf/random.hpp"

namespace agf {
namespace {

// Bit-at-a-time schoolbook product, reduced by repeated subtraction of the
// modulus. Slow and obviously correct.
GF2Poly naive_mul(const GF2Poly &a, const GF2Poly &b, int m, const std::vector<int> &exps) {
    std::vector<int> prod(2 * m, 0);
    for (int i = 0; i < m; ++i) {
        if (!((a[i / 64] >> (i % 64)) & 1u)) continue;
        for (int j = 0; j < m; ++j) prod[i + j] ^= static_cast<int>((b[j / 64] >> (j % 64)) & 1u);
    }
    for (int deg = 2 * m - 1; deg >= m; --deg) {
        if (!prod[deg]) continue;
        for (int e : exps) prod[deg - m + e] ^= 1;
    }
    GF2Poly out((m + 63) / 64, 0);
    for (int i = 0; i < m; ++i) {
        if (prod[i]) out[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    return out;
}

GF2mField::Element random_element(const GF2mField &f, CounterStream &rng) {
    std::vector<std::uint64_t> w(f.words() + 1);
    for (auto &x : w) x = rng.next_u64();
    return f.from_bits(w, 0);
}

std::uint64_t exps_to_u64(const std::vector<int> &e) {
    std::uint64_t v = 0;
    for (int x : e) v |= std::uint64_t{1} << x;
    return v;
}

TEST(GF8, Examples) {
    const GF2mField f(3, {3, 1, 0});
    const auto x = f.from_u64(0b010), x2 = f.from_u64(0b100);
    EXPECT_EQ(f.mul(x, x2), f.from_u64(0b011));
    EXPECT_EQ(f.pow(x, 7), f.one());
    const auto a = f.from_u64(0b101);
    EXPECT_TRUE(f.is_zero(f.add(a, a)));
}

TEST(GF256, MultiplicativeOrderDividesGroupOrder) {
    const auto &f = GF2mField::standard(8);
    for (std::uint64_t v = 1; v < 256; ++v) EXPECT_EQ(f.pow(f.from_u64(v), 255), f.one()) << v;
}

TEST(GF2mField, RejectsReducibleModulus) {
    EXPECT_THROW(GF2mField(4, {4, 2, 0}), ParameterError);  // (z^2 + z + 1)^2
    EXPECT_THROW(GF2mField(3, {3, 0, 1}), ParameterError);  // not decreasing
}

TEST(GF2mField, AxiomsOnRandomElements) {
    CounterStream rng(42);
    for (int m : {9, 64, 67, 127, 679}) {
        const auto &f = GF2mField::standard(m);
        for (int i = 0; i < 50; ++i) {
            const auto a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
            EXPECT_EQ(f.mul(a, b), f.mul(b, a));
            EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            EXPECT_EQ(f.mul(a, f.one()), a);
        }
    }
}

TEST(GF2mField, MulMatchesSchoolbook) {
    CounterStream rng(7);
    for (int m : {5, 63, 64, 65, 127, 200}) {
        const auto &f = GF2mField::standard(m);
        for (int i = 0; i < 30; ++i) {
            const auto a = random_element(f, rng), b = random_element(f, rng);
            EXPECT_EQ(f.mul(a, b), naive_mul(a, b, m, f.modulus_exponents())) << m;
        }
    }
}

TEST(GF2mField, PowMatchesRepeatedMul) {
    CounterStream rng(9);
    const auto &f = GF2mField::standard(67);
    const auto a = random_element(f, rng);
    auto acc = f.one();
    for (std::uint64_t e = 0; e < 40; ++e) {
        EXPECT_EQ(f.pow(a, e), acc);
        acc = f.mul(acc, a);
    }
}

TEST(Irreducibility, RabinAgreesWithTrialDivision) {
    for (int m = 2; m <= 16; ++m) {
        for (int a = 1; a < m; ++a) {
            const std::vector<int> tri{m, a, 0};
            EXPECT_EQ(is_irreducible_rabin(tri), is_irreducible_exhaustive(exps_to_u64(tri))) << m << "," << a;
        }
        for (int a = 3; a < m; ++a) {
            for (int b = 2; b < a; ++b) {
                for (int c = 1; c < b; ++c) {
                    const std::vector<int> pent{m, a, b, c, 0};
                    EXPECT_EQ(is_irreducible_rabin(pent), is_irreducible_exhaustive(exps_to_u64(pent)));
                }
            }
        }
    }
}

TEST(Irreducibility, SearchPrefersFirstTrinomial) {
    EXPECT_EQ(find_irreducible(3), (std::vector<int>{3, 1, 0}));
    for (int m = 2; m <= 24; ++m) {
        const auto e = find_irreducible(m);
        EXPECT_TRUE(is_irreducible_exhaustive(exps_to_u64(e))) << m;
        int first_tri = 0;
        for (int a = 1; a < m && !first_tri; ++a) {
            if (is_irreducible_exhaustive(exps_to_u64({m, a, 0}))) first_tri = a;
        }
        if (first_tri) {
            EXPECT_EQ(e, (std::vector<int>{m, first_tri, 0})) << m;
        } else {
            EXPECT_EQ(e.size(), 5u) << m;
        }
    }
}

TEST(GF2mField, InnerProductIsParityOfAnd) {
    const GF2Poly a{0b1011}, b{0b0110};
    EXPECT_TRUE(GF2mField::inner_product(a, b));  // one common bit
    EXPECT_TRUE(GF2mField::inner_product(a, a));   // three common bits
    EXPECT_FALSE(GF2mField::inner_product(b, b));  // two
}

}  // namespace
}  // namespace agf
