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

#include "agf/prg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <utility>

#include <fmt/format.h>

#include "agf/error.hpp"
#include "agf/gf2m.hpp"

namespace agf {

double planner_ceil(double x) noexcept { return std::ceil(x - 1e-12 * std::max(1.0, std::abs(x))); }

Theta Theta::from_value(double theta) {
    if (!(theta > 0.0 && theta < 1.0)) throw ParameterError(fmt::format("theta must lie in (0, 1), got {}", theta));
    return Theta(-std::log2(theta));
}

Theta Theta::from_log2_inv(double log2_inv) {
    if (!(log2_inv > 0.0) || std::isinf(log2_inv)) {
        throw ParameterError(fmt::format("log2(1/theta) must be positive and finite, got {}", log2_inv));
    }
    return Theta(log2_inv);
}

Theta Theta::exact() noexcept { return Theta(std::numeric_limits<double>::infinity()); }

double Theta::value() const noexcept { return std::exp2(-log2_inv_); }

bool Theta::is_exact() const noexcept { return std::isinf(log2_inv_); }

std::string Theta::to_string() const {
    if (is_exact()) return "0";
    if (log2_inv_ <= 64.0) return fmt::format("{}", value());
    return fmt::format("2^-{}", log2_inv_);
}

Theta Theta::parse(const std::string &text) {
    try {
        std::size_t used = 0;
        if (text.rfind("2^-", 0) == 0) {
            const double e = std::stod(text.substr(3), &used);
            if (used + 3 != text.size()) throw ParameterError("trailing characters");
            return from_log2_inv(e);
        }
        const double v = std::stod(text, &used);
        if (used != text.size()) throw ParameterError("trailing characters");
        return from_value(v);
    } catch (const std::logic_error &) {
        throw ParameterError("cannot parse theta '" + text + "'");
    } catch (const ParameterError &) {
        throw ParameterError("cannot parse theta '" + text + "'");
    }
}

namespace {

void check_kn(std::uint64_t k, std::uint64_t n) {
    if (k < 2) throw ParameterError(fmt::format("independence parameter k must be >= 2, got {}", k));
    if (k > n) throw ParameterError(fmt::format("k = {} exceeds tape length n = {}", k, n));
}

}  // namespace

std::uint64_t kwise_seed_length(std::uint64_t k, std::uint64_t n, Theta theta) {
    check_kn(k, n);
    if (theta.is_exact()) throw ParameterError("theta must be positive");
    const double kk = static_cast<double>(k);
    const double nn = static_cast<double>(n);
    const double r = kk + 2.0 * std::log2(std::log2(kk)) + 2.0 * std::log2(std::log2(nn)) + 2.0 * theta.log2_inv();
    return static_cast<std::uint64_t>(planner_ceil(r));
}

std::uint64_t sampling_seed_length(double epsilon, std::uint64_t n, std::uint64_t set_size, Theta theta) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
    if (set_size < 1) throw ParameterError("set size must be >= 1");
    if (theta.is_exact()) throw ParameterError("theta must be positive");
    const double r = 4.0 * epsilon * epsilon * static_cast<double>(n) * std::log2(static_cast<double>(set_size)) +
                     2.0 * theta.log2_inv();
    return static_cast<std::uint64_t>(planner_ceil(r));
}

TapePlan plan_tape(std::uint64_t k, std::uint64_t n, Theta theta) {
    TapePlan p;
    p.fact3_r = kwise_seed_length(k, n, theta);
    p.n = n;
    p.k = k;
    p.theta = theta;
    const double m = std::log2(static_cast<double>(n)) + static_cast<double>(k) / 2.0 + 1.0 + theta.log2_inv();
    if (m > 1e6) throw CapacityError(fmt::format("generator field degree {} is beyond the supported range", m));
    p.m = std::max(1, static_cast<int>(planner_ceil(m)));
    p.r = 2 * static_cast<std::uint64_t>(p.m);
    return p;
}

std::uint64_t tape_seed_length(std::uint64_t k, std::uint64_t n, Theta theta) { return plan_tape(k, n, theta).r; }

namespace {

// Connection polynomial c (c[0] = 1) of the shortest LFSR generating s.
std::vector<std::uint8_t> berlekamp_massey(const std::vector<std::uint8_t> &s) {
    std::vector<std::uint8_t> c{1}, b{1};
    std::size_t len = 0, shift = 1;
    for (std::size_t n = 0; n < s.size(); ++n) {
        std::uint8_t d = s[n];
        for (std::size_t i = 1; i <= len && i < c.size(); ++i) d ^= c[i] & s[n - i];
        if (d == 0) {
            ++shift;
            continue;
        }
        auto t = c;
        if (c.size() < b.size() + shift) c.resize(b.size() + shift, 0);
        for (std::size_t i = 0; i < b.size(); ++i) c[i + shift] ^= b[i];
        if (2 * len <= n) {
            len = n + 1 - len;
            b = std::move(t);
            shift = 1;
        } else {
            ++shift;
        }
    }
    c.resize(len + 1, 0);
    return c;
}

// Bits [off, off + len) of a packed array as little-endian words.
void extract_window(const std::vector<std::uint64_t> &words, std::size_t off, std::size_t len,
                    std::vector<std::uint64_t> &out) {
    const std::size_t nw = (len + 63) / 64;
    out.assign(nw, 0);
    const std::size_t w0 = off / 64;
    const unsigned sh = static_cast<unsigned>(off % 64);
    for (std::size_t q = 0; q < nw; ++q) {
        std::uint64_t v = words[w0 + q] >> sh;
        if (sh != 0 && w0 + q + 1 < words.size()) v |= words[w0 + q + 1] << (64 - sh);
        out[q] = v;
    }
    if (len % 64 != 0) out[nw - 1] &= (std::uint64_t{1} << (len % 64)) - 1;
}

struct DecodedSeed {
    const GF2mField *field;
    GF2mField::Element x, y;
};

DecodedSeed decode_seed(const TapePlan &plan, const BitString &seed) {
    if (seed.size() != plan.r) {
        throw ParameterError(fmt::format("seed has {} bits but the generator for (k={}, n={}, theta={}) needs r = {}",
                                         seed.size(), plan.k, plan.n, plan.theta.to_string(), plan.r));
    }
    const GF2mField &f = GF2mField::standard(plan.m);
    return {&f, f.from_bits(seed.words(), 0), f.from_bits(seed.words(), static_cast<std::size_t>(plan.m))};
}

}  // namespace

BiasedTape generate_tape(std::uint64_t k, std::uint64_t n, Theta theta, const BitString &seed) {
    const TapePlan plan = plan_tape(k, n, theta);
    const DecodedSeed ds = decode_seed(plan, seed);
    const GF2mField &f = *ds.field;

    BiasedTape tape;
    tape.n_ = n;
    tape.k_ = k;
    tape.theta_ = theta;
    tape.m_ = plan.m;
    tape.construction_ = TapeConstruction::Powering;
    tape.seed_ = seed;
    tape.bits_ = BitString(n);

    const std::uint64_t direct = std::min<std::uint64_t>(n, plan.r);
    std::vector<std::uint8_t> head(direct);
    GF2mField::Element xi = ds.x;
    for (std::uint64_t i = 0; i < direct; ++i) {
        if (i > 0) xi = f.mul(xi, ds.x);
        head[i] = GF2mField::inner_product(xi, ds.y) ? 1 : 0;
        tape.bits_.set(i, head[i] != 0);
    }
    if (direct == n) return tape;

    const auto c = berlekamp_massey(head);
    const std::size_t len = c.size() - 1;
    if (len == 0) return tape;  // the sequence is identically zero
    // Window bit p holds s_{j-len+p}, which carries coefficient c[len-p].
    std::vector<std::uint64_t> mask((len + 63) / 64, 0);
    for (std::size_t p = 0; p < len; ++p) {
        if (c[len - p]) mask[p / 64] |= std::uint64_t{1} << (p % 64);
    }
    std::vector<std::uint64_t> window;
    auto &words = tape.bits_.words();
    for (std::uint64_t j = direct; j < n; ++j) {
        extract_window(words, static_cast<std::size_t>(j - len), len, window);
        std::uint64_t acc = 0;
        for (std::size_t q = 0; q < window.size(); ++q) acc ^= window[q] & mask[q];
        if (std::popcount(acc) & 1) words[j / 64] |= std::uint64_t{1} << (j % 64);
    }
    return tape;
}

bool decode_tape_bit(std::uint64_t k, std::uint64_t n, Theta theta, const BitString &seed, std::uint64_t i) {
    const TapePlan plan = plan_tape(k, n, theta);
    if (i < 1 || i > n) throw ParameterError(fmt::format("bit index {} outside 1..{}", i, n));
    const DecodedSeed ds = decode_seed(plan, seed);
    return GF2mField::inner_product(ds.field->pow(ds.x, i), ds.y);
}

bool BiasedTape::bit(std::uint64_t i) const {
    if (i < 1 || i > n_) throw ParameterError(fmt::format("bit index {} outside 1..{}", i, n_));
    return bits_.get(static_cast<std::size_t>(i - 1));
}

BiasedTape BiasedTape::uniform(BitString bits) {
    BiasedTape t;
    t.n_ = bits.size();
    t.k_ = bits.size();
    t.theta_ = Theta::exact();
    t.construction_ = TapeConstruction::Uniform;
    t.seed_ = bits;
    t.bits_ = std::move(bits);
    return t;
}

std::string BiasedTape::to_text() const {
    std::string out = fmt::format("{} {} {} {} {}\n", n_, k_, theta_.to_string(), seed_.size(), seed_.to_hex());
    static constexpr char kHex[] = "0123456789abcdef";
    for (std::uint64_t q = 0; q * 4 < n_; ++q) {
        unsigned nib = 0;
        for (unsigned b = 0; b < 4; ++b) {
            const std::uint64_t j = q * 4 + b;
            nib = (nib << 1) | ((j < n_ && bits_.get(static_cast<std::size_t>(j))) ? 1u : 0u);
        }
        out.push_back(kHex[nib]);
    }
    out.push_back('\n');
    return out;
}

unsigned index_width(std::uint64_t set_size) {
    if (set_size < 1) throw ParameterError("set size must be >= 1");
    if (set_size == 1) return 0;
    const unsigned ceil_log = static_cast<unsigned>(std::bit_width(set_size - 1));
    if (std::has_single_bit(set_size)) return ceil_log;
    if (ceil_log + 8 > 64) throw CapacityError("set size too large for 64-bit index draws");
    return ceil_log + 8;
}

std::uint64_t reduce_index(std::uint64_t value, unsigned width, std::uint64_t set_size) noexcept {
    if (width == 0) return 0;
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(value) * set_size) >> width);
}

IndexSample sample_indices(const BiasedTape &tape, std::uint64_t set_size, std::uint64_t count, std::uint64_t offset) {
    IndexSample out;
    out.width = index_width(set_size);
    out.bits_consumed = count * out.width;
    if (!std::has_single_bit(set_size)) out.nonuniformity = std::ldexp(static_cast<double>(set_size), -static_cast<int>(out.width));
    if (offset + out.bits_consumed > tape.n()) {
        throw CapacityError(fmt::format("tape of {} bits exhausted: need {} bits from offset {}", tape.n(),
                                        out.bits_consumed, offset));
    }
    out.indices.reserve(count);
    const BitString &bits = tape.bits();
    std::size_t pos = static_cast<std::size_t>(offset);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t v = 0;
        for (unsigned b = 0; b < out.width; ++b) v = (v << 1) | (bits.get(pos++) ? 1u : 0u);
        out.indices.push_back(reduce_index(v, out.width, set_size));
    }
    return out;
}

std::uint64_t draw_index(EntropySource &entropy, std::uint64_t set_size) {
    const unsigned w = index_width(set_size);
    if (w == 0) return 0;
    return reduce_index(entropy.take_bits(w), w, set_size);
}

void RandomnessLedger::record(std::string label, std::uint64_t bits) {
    entries_.push_back({std::move(label), bits});
    total_ += bits;
}

void RandomnessLedger::merge(const RandomnessLedger &other) {
    for (const auto &e : other.entries_) record(e.label, e.bits);
}

KwiseAudit exhaustive_kwise_audit(std::uint64_t k, std::uint64_t n, Theta theta, std::uint64_t max_r) {
    KwiseAudit audit;
    audit.plan = plan_tape(k, n, theta);
    if (audit.plan.r > max_r) {
        throw CapacityError(fmt::format("exhaustive audit needs 2^{} seeds; limit is 2^{}", audit.plan.r, max_r));
    }
    if (n > 64) throw CapacityError("exhaustive audit supports n <= 64");
    const std::uint64_t r = audit.plan.r;
    audit.seeds = std::uint64_t{1} << r;

    std::vector<std::uint64_t> patterns;
    patterns.reserve(audit.seeds);
    BitString seed(r);
    for (std::uint64_t v = 0; v < audit.seeds; ++v) {
        seed.words()[0] = v;
        patterns.push_back(generate_tape(k, n, theta, seed).bits().words()[0]);
    }
    std::sort(patterns.begin(), patterns.end());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> hist;
    for (auto p : patterns) {
        if (!hist.empty() && hist.back().first == p) {
            ++hist.back().second;
        } else {
            hist.emplace_back(p, 1);
        }
    }

    const double inv_seeds = 1.0 / static_cast<double>(audit.seeds);
    std::vector<unsigned> subset;
    std::vector<std::uint64_t> marginal;
    // Visit every subset of size j in lexicographic order.
    for (unsigned j = 1; j <= k; ++j) {
        subset.resize(j);
        for (unsigned q = 0; q < j; ++q) subset[q] = q;
        while (true) {
            marginal.assign(std::size_t{1} << j, 0);
            for (const auto &[pat, cnt] : hist) {
                std::size_t idx = 0;
                for (unsigned q = 0; q < j; ++q) idx |= static_cast<std::size_t>((pat >> subset[q]) & 1u) << q;
                marginal[idx] += cnt;
            }
            const double u = std::ldexp(1.0, -static_cast<int>(j));
            double l1 = 0.0, bias = 0.0;
            for (std::size_t x = 0; x < marginal.size(); ++x) {
                const double px = static_cast<double>(marginal[x]) * inv_seeds;
                l1 += std::abs(px - u);
                bias += (std::popcount(x) & 1) ? -px : px;
            }
            audit.max_l1 = std::max(audit.max_l1, l1);
            audit.max_bias = std::max(audit.max_bias, std::abs(bias));
            ++audit.subsets;

            int q = static_cast<int>(j) - 1;
            while (q >= 0 && subset[q] == n - j + static_cast<unsigned>(q)) --q;
            if (q < 0) break;
            ++subset[q];
            for (unsigned z = static_cast<unsigned>(q) + 1; z < j; ++z) subset[z] = subset[z - 1] + 1;
        }
    }
    audit.pass = audit.max_l1 <= theta.value() + 1e-12;
    return audit;
}

}  // namespace agf
