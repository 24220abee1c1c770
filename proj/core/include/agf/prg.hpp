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
#include <string>
#include <vector>

#include "agf/random.hpp"

namespace agf {

/// Ceiling that forgives ~1e-12 relative roundoff, so planned quantities such
/// as 16 * 1 / 0.04 land on 400 rather than 401.
double planner_ceil(double x) noexcept;

/// Approximation parameter theta in (0, 1), stored as log2(1/theta) because
/// planned values routinely underflow a double.
class Theta {
   public:
    static Theta from_value(double theta);
    static Theta from_log2_inv(double log2_inv);
    /// Marker for tapes of truly random bits (theta = 0).
    static Theta exact() noexcept;

    double log2_inv() const noexcept { return log2_inv_; }
    double value() const noexcept;
    bool is_exact() const noexcept;
    /// "0.25", or "2^-334.14" once the value is too small to print usefully.
    std::string to_string() const;
    /// Accepts a decimal in (0, 1) or the "2^-x" form.
    static Theta parse(const std::string &text);

   private:
    explicit Theta(double log2_inv) : log2_inv_(log2_inv) {}
    double log2_inv_;
};

/// ceil(k + 2 log log k + 2 log log n + 2 log(1/theta)), all logs base 2.
std::uint64_t kwise_seed_length(std::uint64_t k, std::uint64_t n, Theta theta);

/// ceil(4 eps^2 n log|Y| + 2 log(1/theta)).
std::uint64_t sampling_seed_length(double epsilon, std::uint64_t n, std::uint64_t set_size, Theta theta);

/// Parameters of the implemented generator. The powering generator over
/// GF(2^m) has bias <= n / 2^m on every nonempty parity; the XOR lemma turns
/// bias b into l1 distance <= 2^{k/2} b on any k bits. Choosing
/// m = ceil(log n + k/2 + 1 + log(1/theta)) therefore leaves every <= k subset
/// within theta / 2 of uniform.
struct TapePlan {
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    Theta theta = Theta::exact();
    int m = 0;
    std::uint64_t r = 0;        // implemented seed length, 2m
    std::uint64_t fact3_r = 0;  // kwise_seed_length(k, n, theta)
};

TapePlan plan_tape(std::uint64_t k, std::uint64_t n, Theta theta);

/// Seed bits the generator consumes for (k, n, theta): plan_tape(...).r.
std::uint64_t tape_seed_length(std::uint64_t k, std::uint64_t n, Theta theta);

enum class TapeConstruction { Powering, Uniform };

class BiasedTape {
   public:
    std::uint64_t n() const noexcept { return n_; }
    std::uint64_t k() const noexcept { return k_; }
    Theta theta() const noexcept { return theta_; }
    TapeConstruction construction() const noexcept { return construction_; }
    const BitString &seed_bits() const noexcept { return seed_; }
    /// Field degree of the powering construction, 0 for uniform tapes.
    int field_degree() const noexcept { return m_; }

    /// Output bit i, 1-indexed as X_1 ... X_n.
    bool bit(std::uint64_t i) const;
    /// All output bits; position j holds X_{j+1}.
    const BitString &bits() const noexcept { return bits_; }

    /// "n k theta r seed_hex" followed by a line of the output bits packed
    /// first-bit-most-significant into hex nibbles.
    std::string to_text() const;

    /// A tape that is its own seed: n truly random bits, no compression.
    static BiasedTape uniform(BitString bits);

   private:
    friend BiasedTape generate_tape(std::uint64_t, std::uint64_t, Theta, const BitString &);
    BiasedTape() = default;

    std::uint64_t n_ = 0;
    std::uint64_t k_ = 0;
    Theta theta_ = Theta::exact();
    int m_ = 0;
    TapeConstruction construction_ = TapeConstruction::Uniform;
    BitString seed_;
    BitString bits_;
};

/// Powering generator: seed = (x, y), x the low m bits and y the next m;
/// X_i = <x^i, y>. Bulk output solves for the sequence's linear recurrence
/// (Berlekamp-Massey on the first 2m bits) and runs it forward.
/// Throws ParameterError unless seed.size() == tape_seed_length(k, n, theta).
BiasedTape generate_tape(std::uint64_t k, std::uint64_t n, Theta theta, const BitString &seed);

/// X_i from (seed, i) alone, via one field exponentiation.
bool decode_tape_bit(std::uint64_t k, std::uint64_t n, Theta theta, const BitString &seed, std::uint64_t i);

/// Bits per index into a set of size s: 0 for s = 1, log2 s for powers of
/// two, ceil(log2 s) + 8 otherwise.
unsigned index_width(std::uint64_t set_size);

/// Maps a width-bit value to [0, s) by (v * s) >> width.
std::uint64_t reduce_index(std::uint64_t value, unsigned width, std::uint64_t set_size) noexcept;

struct IndexSample {
    std::vector<std::uint64_t> indices;
    std::uint64_t bits_consumed = 0;
    unsigned width = 0;
    /// Upper bound s / 2^width on each index's deviation from uniform; 0 when exact.
    double nonuniformity = 0.0;
};

/// `count` indices from consecutive tape bits starting at X_{offset+1}.
/// Throws CapacityError when the tape runs out.
IndexSample sample_indices(const BiasedTape &tape, std::uint64_t set_size, std::uint64_t count,
                           std::uint64_t offset = 0);

/// One index straight from truly random bits, same width rule.
std::uint64_t draw_index(EntropySource &entropy, std::uint64_t set_size);

class RandomnessLedger {
   public:
    struct Entry {
        std::string label;
        std::uint64_t bits = 0;
        friend bool operator==(const Entry &, const Entry &) = default;
    };

    void record(std::string label, std::uint64_t bits);
    void merge(const RandomnessLedger &other);
    std::uint64_t total() const noexcept { return total_; }
    const std::vector<Entry> &entries() const noexcept { return entries_; }

   private:
    std::vector<Entry> entries_;
    std::uint64_t total_ = 0;
};

/// Brute-force audit over every seed of the generator and every nonempty
/// subset of at most k output positions.
struct KwiseAudit {
    TapePlan plan;
    std::uint64_t seeds = 0;
    std::uint64_t subsets = 0;
    double max_l1 = 0.0;
    double max_bias = 0.0;
    bool pass = false;  // max_l1 <= theta
};

/// Throws CapacityError when r > max_r or n > 64.
KwiseAudit exhaustive_kwise_audit(std::uint64_t k, std::uint64_t n, Theta theta, std::uint64_t max_r = 20);

}  // namespace agf
