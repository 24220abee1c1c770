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

#include "agf/gf2m.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "agf/error.hpp"

namespace agf {

namespace {

void trim(GF2Poly &p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

void flip_bit(GF2Poly &p, std::size_t i) {
    if (i / 64 >= p.size()) p.resize(i / 64 + 1, 0);
    p[i / 64] ^= std::uint64_t{1} << (i % 64);
}

// a ^= b << shift
void xor_shifted(GF2Poly &a, const GF2Poly &b, std::size_t shift) {
    const std::size_t ws = shift / 64;
    const unsigned bs = static_cast<unsigned>(shift % 64);
    const std::size_t need = b.size() + ws + 1;
    if (a.size() < need) a.resize(need, 0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        a[i + ws] ^= b[i] << bs;
        if (bs != 0) a[i + ws + 1] ^= b[i] >> (64 - bs);
    }
}

// Reduce p modulo the sparse polynomial with `exponents` (leading m first).
void reduce_sparse(GF2Poly &p, const std::vector<int> &exponents) {
    const std::size_t m = static_cast<std::size_t>(exponents.front());
    for (std::size_t w = p.size(); w-- > 0;) {
        while (true) {
            const std::uint64_t word = p[w];
            if (word == 0) break;
            const std::size_t top = w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(word));
            if (top < m) break;
            p[w] ^= std::uint64_t{1} << (top % 64);
            for (std::size_t e = 1; e < exponents.size(); ++e) {
                flip_bit(p, top - m + static_cast<std::size_t>(exponents[e]));
            }
        }
    }
}

GF2Poly mul_raw(const GF2Poly &a, const GF2Poly &b) {
    GF2Poly out(a.size() + b.size() + 1, 0);
    if (a.empty() || b.empty()) return out;
    GF2Poly shifted(b.size() + 1, 0);
    for (unsigned k = 0; k < 64; ++k) {
        bool any = false;
        for (auto w : a) {
            if ((w >> k) & 1u) {
                any = true;
                break;
            }
        }
        if (!any) continue;
        shifted[0] = b[0] << k;
        for (std::size_t i = 1; i < b.size(); ++i) {
            shifted[i] = (b[i] << k) | (k ? b[i - 1] >> (64 - k) : 0);
        }
        shifted[b.size()] = k ? b.back() >> (64 - k) : 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if ((a[i] >> k) & 1u) {
                for (std::size_t j = 0; j < shifted.size(); ++j) out[i + j] ^= shifted[j];
            }
        }
    }
    return out;
}

std::vector<int> prime_factors(int m) {
    std::vector<int> out;
    for (int q = 2; q * q <= m; ++q) {
        if (m % q == 0) {
            out.push_back(q);
            while (m % q == 0) m /= q;
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

bool valid_exponents(int m, const std::vector<int> &e) {
    if (e.size() < 2 || e.front() != m || e.back() != 0) return false;
    for (std::size_t i = 1; i < e.size(); ++i) {
        if (e[i] >= e[i - 1]) return false;
    }
    return true;
}

}  // namespace

int gf2_degree(const GF2Poly &p) {
    for (std::size_t w = p.size(); w-- > 0;) {
        if (p[w] != 0) return static_cast<int>(w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(p[w])));
    }
    return -1;
}

GF2Poly gf2_mod(GF2Poly a, const GF2Poly &b) {
    const int db = gf2_degree(b);
    if (db < 0) throw ParameterError("gf2_mod: division by zero polynomial");
    for (int da = gf2_degree(a); da >= db; da = gf2_degree(a)) {
        xor_shifted(a, b, static_cast<std::size_t>(da - db));
    }
    trim(a);
    return a;
}

GF2Poly gf2_gcd(GF2Poly a, GF2Poly b) {
    trim(a);
    trim(b);
    while (gf2_degree(b) >= 0) {
        GF2Poly r = gf2_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

GF2Poly gf2_from_exponents(const std::vector<int> &exponents) {
    GF2Poly p;
    for (int e : exponents) flip_bit(p, static_cast<std::size_t>(e));
    return p;
}

bool is_irreducible_rabin(const std::vector<int> &exponents) {
    const int m = exponents.front();
    if (m == 1) return true;
    const GF2Poly f = gf2_from_exponents(exponents);
    const auto primes = prime_factors(m);
    std::vector<int> checkpoints;
    for (int q : primes) checkpoints.push_back(m / q);

    GF2Poly h = gf2_from_exponents({1});
    const GF2Poly z = h;
    for (int k = 1; k <= m; ++k) {
        GF2Poly sq = mul_raw(h, h);
        reduce_sparse(sq, exponents);
        trim(sq);
        h = std::move(sq);
        if (std::find(checkpoints.begin(), checkpoints.end(), k) != checkpoints.end()) {
            GF2Poly diff = h;
            if (diff.empty()) diff.resize(1, 0);
            diff[0] ^= 2;  // - z
            trim(diff);
            if (diff.empty()) return false;  // z^{2^k} = z: f has a factor of degree dividing k
            if (gf2_degree(gf2_gcd(f, diff)) != 0) return false;
        }
    }
    GF2Poly diff = h;
    if (diff.empty()) diff.resize(1, 0);
    diff[0] ^= 2;
    trim(diff);
    return diff.empty();
}

bool is_irreducible_exhaustive(std::uint64_t modulus) {
    const int m = 63 - std::countl_zero(modulus);
    if (m < 1 || m > 32) throw ParameterError("exhaustive irreducibility check supports degrees 1..32");
    const GF2Poly f{modulus};
    for (std::uint64_t g = 2; g < (std::uint64_t{1} << (m / 2 + 1)); ++g) {
        if (gf2_degree(gf2_mod(f, GF2Poly{g})) < 0) return false;
    }
    return true;
}

std::vector<int> find_irreducible(int m) {
    if (m < 1) throw ParameterError("field degree must be >= 1");
    if (m == 1) return {1, 0};
    for (int a = 1; a < m; ++a) {
        std::vector<int> e{m, a, 0};
        if (is_irreducible_rabin(e)) return e;
    }
    for (int a = 3; a < m; ++a) {
        for (int b = 2; b < a; ++b) {
            for (int c = 1; c < b; ++c) {
                std::vector<int> e{m, a, b, c, 0};
                if (is_irreducible_rabin(e)) return e;
            }
        }
    }
    throw ParameterError("no irreducible trinomial or pentanomial of degree " + std::to_string(m));
}

GF2mField::GF2mField(int m, std::vector<int> exponents)
    : m_(m), words_(static_cast<std::size_t>((m + 63) / 64)), exponents_(std::move(exponents)) {
    if (m < 1) throw ParameterError("field degree must be >= 1");
    if (!valid_exponents(m, exponents_)) {
        throw ParameterError("modulus exponents must run strictly down from m to 0");
    }
    bool irreducible = false;
    if (m <= 32) {
        irreducible = is_irreducible_exhaustive(gf2_from_exponents(exponents_).front());
    } else {
        irreducible = is_irreducible_rabin(exponents_);
    }
    if (!irreducible) {
        throw ParameterError("modulus of degree " + std::to_string(m) + " is reducible");
    }
}

const GF2mField &GF2mField::standard(int m) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GF2mField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end()) {
        it = cache.emplace(m, std::make_unique<GF2mField>(m, find_irreducible(m))).first;
    }
    return *it->second;
}

GF2mField::Element GF2mField::one() const {
    Element e = zero();
    e[0] = 1;
    return e;
}

GF2mField::Element GF2mField::from_u64(std::uint64_t v) const {
    if (m_ < 64 && (v >> m_) != 0) throw ParameterError("value does not fit in the field");
    Element e = zero();
    e[0] = v;
    return e;
}

GF2mField::Element GF2mField::from_bits(const std::vector<std::uint64_t> &bits, std::size_t offset) const {
    Element e = zero();
    const std::size_t m = static_cast<std::size_t>(m_);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t pos = offset + j;
        if (pos / 64 < bits.size() && ((bits[pos / 64] >> (pos % 64)) & 1u)) {
            e[j / 64] |= std::uint64_t{1} << (j % 64);
        }
    }
    return e;
}

bool GF2mField::is_zero(const Element &a) const noexcept {
    return std::all_of(a.begin(), a.end(), [](std::uint64_t w) { return w == 0; });
}

GF2mField::Element GF2mField::add(const Element &a, const Element &b) const {
    Element out(words_);
    for (std::size_t i = 0; i < words_; ++i) out[i] = a[i] ^ b[i];
    return out;
}

void GF2mField::reduce(GF2Poly &p) const {
    reduce_sparse(p, exponents_);
    p.resize(words_, 0);
}

GF2mField::Element GF2mField::mul(const Element &a, const Element &b) const {
    GF2Poly p = mul_raw(a, b);
    reduce(p);
    return p;
}

GF2mField::Element GF2mField::pow(const Element &a, std::uint64_t e) const {
    Element result = one();
    Element base = a;
    while (e != 0) {
        if (e & 1u) result = mul(result, base);
        e >>= 1;
        if (e != 0) base = mul(base, base);
    }
    return result;
}

bool GF2mField::inner_product(const Element &a, const Element &b) noexcept {
    std::uint64_t acc = 0;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) acc ^= a[i] & b[i];
    return std::popcount(acc) & 1;
}

}  // namespace agf
