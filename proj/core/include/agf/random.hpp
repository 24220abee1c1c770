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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace agf {

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Child key for unit `index` under `key`. Used to split one master seed
/// into independent per-repeat and per-purpose streams.
std::uint64_t derive_key(std::uint64_t key, std::uint64_t index) noexcept;

/// Counter-based generator: output i is mix64(key + (i + 1) * golden).
/// Output depends only on (key, i), so streams split by key are
/// independent of scheduling order.
class CounterStream {
   public:
    explicit CounterStream(std::uint64_t key) noexcept : key_(key) {}

    std::uint64_t next_u64() noexcept;
    /// Uniform double in [0, 1) with 53 random mantissa bits.
    double uniform() noexcept;
    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t position() const noexcept { return counter_; }

   private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Fixed-length bit string. Bit j is the coefficient of 2^j when the string
/// is read as an integer; hex text is that integer, most significant digit
/// first, zero-padded to ceil(size/4) digits.
class BitString {
   public:
    BitString() = default;
    explicit BitString(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const noexcept { return size_; }
    bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
    void set(std::size_t i, bool b) {
        const std::uint64_t m = std::uint64_t{1} << (i % 64);
        words_[i / 64] = b ? (words_[i / 64] | m) : (words_[i / 64] & ~m);
    }
    const std::vector<std::uint64_t> &words() const noexcept { return words_; }
    std::vector<std::uint64_t> &words() noexcept { return words_; }
    bool all_zero() const noexcept;

    /// Throws ParameterError when the text has the wrong digit count for
    /// `size` bits, contains non-hex characters, or sets bits >= size.
    static BitString from_hex(std::string_view hex, std::size_t size);
    std::string to_hex() const;

    friend bool operator==(const BitString &, const BitString &) = default;

   private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// A reproducible master seed. The text form is kept verbatim for
/// serialization; the key is a hash of the hex digits.
class Seed {
   public:
    static Seed parse(std::string_view hex);
    static Seed from_key(std::uint64_t key);

    const std::string &hex() const noexcept { return hex_; }
    std::uint64_t key() const noexcept { return key_; }
    /// Seed for unit `index` (harness repeat, worker) of this master seed.
    Seed split(std::uint64_t index) const;

    friend bool operator==(const Seed &a, const Seed &b) { return a.key_ == b.key_ && a.hex_ == b.hex_; }

   private:
    std::string hex_;
    std::uint64_t key_ = 0;
};

/// Source of the "truly random" bits an estimator spends. Every draw is
/// counted at bit granularity so ledgers can be audited against it.
class EntropySource {
   public:
    explicit EntropySource(std::uint64_t key) : stream_(key) {}

    /// Next `count` bits (count <= 64) as an integer, first bit most significant.
    std::uint64_t take_bits(unsigned count);
    BitString take_bitstring(std::size_t count);
    /// Uniform in [0, 1); costs 53 bits.
    double uniform53();
    /// Standard normal via Box-Muller; two normals per pair of uniforms.
    double normal();

    std::uint64_t bits_consumed() const noexcept { return consumed_; }

   private:
    CounterStream stream_;
    std::uint64_t buffer_ = 0;
    unsigned buffered_ = 0;
    std::uint64_t consumed_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Measurement outcomes are physical randomness; they come from their own
/// stream and are never counted in a ledger.
using MeasurementStream = CounterStream;

}  // namespace agf
