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

#include <cstdint>
#include <vector>

namespace agf {

/// GF(2)[z] polynomial, bit j = coefficient of z^j.
using GF2Poly = std::vector<std::uint64_t>;

int gf2_degree(const GF2Poly &p);
GF2Poly gf2_mod(GF2Poly a, const GF2Poly &b);
GF2Poly gf2_gcd(GF2Poly a, GF2Poly b);

/// Polynomial with the given exponents set, e.g. {3, 1, 0} for z^3 + z + 1.
GF2Poly gf2_from_exponents(const std::vector<int> &exponents);

/// Rabin's test: z^{2^m} = z mod f and gcd(z^{2^{m/q}} - z, f) = 1 for every
/// prime q dividing m.
bool is_irreducible_rabin(const std::vector<int> &exponents);

/// Trial division by every polynomial of degree <= m/2; m <= 32 only.
bool is_irreducible_exhaustive(std::uint64_t modulus);

/// First irreducible trinomial z^m + z^a + 1 (a ascending), else the first
/// pentanomial z^m + z^a + z^b + z^c + 1 in lexicographic (a, b, c) order.
std::vector<int> find_irreducible(int m);

/// GF(2^m) = GF(2)[z] / f(z) with f sparse. Elements are GF2Poly of
/// ceil(m/64) words with every bit >= m clear.
class GF2mField {
   public:
    using Element = GF2Poly;

    /// Throws ParameterError unless `exponents` starts with m, ends with 0,
    /// is strictly decreasing and describes an irreducible polynomial
    /// (exhaustive divisor check for m <= 32, Rabin above).
    GF2mField(int m, std::vector<int> exponents);

    /// Field with the modulus chosen by find_irreducible(m); cached per m.
    static const GF2mField &standard(int m);

    int degree() const noexcept { return m_; }
    std::size_t words() const noexcept { return words_; }
    const std::vector<int> &modulus_exponents() const noexcept { return exponents_; }

    Element zero() const { return Element(words_, 0); }
    Element one() const;
    Element from_u64(std::uint64_t v) const;
    /// Element from bits [offset, offset + m) of `bits` (packed little-endian words).
    Element from_bits(const std::vector<std::uint64_t> &bits, std::size_t offset) const;
    bool is_zero(const Element &a) const noexcept;

    Element add(const Element &a, const Element &b) const;
    Element mul(const Element &a, const Element &b) const;
    Element pow(const Element &a, std::uint64_t e) const;
    /// Parity of the bitwise AND: <a, b> over GF(2).
    static bool inner_product(const Element &a, const Element &b) noexcept;

   private:
    void reduce(GF2Poly &p) const;

    int m_;
    std::size_t words_;
    std::vector<int> exponents_;
};

}  // namespace agf
