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

#include "agf/random.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

#include "agf/error.hpp"

namespace agf {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

std::uint64_t derive_key(std::uint64_t key, std::uint64_t index) noexcept {
    return mix64(key ^ mix64(index * kGolden + 0x632be59bd9b4e019ULL));
}

std::uint64_t CounterStream::next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

double CounterStream::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool BitString::all_zero() const noexcept {
    for (auto w : words_) {
        if (w != 0) return false;
    }
    return true;
}

BitString BitString::from_hex(std::string_view hex, std::size_t size) {
    const std::size_t digits = (size + 3) / 4;
    if (hex.size() != digits) {
        throw ParameterError("seed has " + std::to_string(hex.size()) + " hex digits; " +
                             std::to_string(size) + " bits need exactly " + std::to_string(digits));
    }
    BitString out(size);
    for (std::size_t d = 0; d < digits; ++d) {
        const int v = hex_value(hex[digits - 1 - d]);
        if (v < 0) {
            throw ParameterError("seed contains a non-hex character");
        }
        for (int b = 0; b < 4; ++b) {
            if ((v >> b) & 1) {
                const std::size_t pos = d * 4 + static_cast<std::size_t>(b);
                if (pos >= size) {
                    throw ParameterError("seed sets bits beyond its declared length of " + std::to_string(size));
                }
                out.set(pos, true);
            }
        }
    }
    return out;
}

std::string BitString::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    const std::size_t digits = (size_ + 3) / 4;
    std::string out(digits, '0');
    for (std::size_t d = 0; d < digits; ++d) {
        int v = 0;
        for (int b = 0; b < 4; ++b) {
            const std::size_t pos = d * 4 + static_cast<std::size_t>(b);
            if (pos < size_ && get(pos)) v |= 1 << b;
        }
        out[digits - 1 - d] = kDigits[v];
    }
    return out;
}

Seed Seed::parse(std::string_view hex) {
    if (hex.empty()) {
        throw ParameterError("seed must be a non-empty hex string");
    }
    Seed s;
    s.hex_.reserve(hex.size());
    std::uint64_t key = mix64(hex.size());
    for (char c : hex) {
        const int v = hex_value(c);
        if (v < 0) {
            throw ParameterError("seed '" + std::string(hex) + "' is not hex");
        }
        s.hex_.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        key = mix64(key ^ (static_cast<std::uint64_t>(v) + kGolden));
    }
    s.key_ = key;
    return s;
}

Seed Seed::from_key(std::uint64_t key) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string hex(16, '0');
    for (int i = 0; i < 16; ++i) {
        hex[15 - i] = kDigits[(key >> (4 * i)) & 0xf];
    }
    return parse(hex);
}

Seed Seed::split(std::uint64_t index) const { return from_key(derive_key(key_, index)); }

std::uint64_t EntropySource::take_bits(unsigned count) {
    if (count > 64) {
        throw ParameterError("take_bits: at most 64 bits per call");
    }
    std::uint64_t out = 0;
    unsigned need = count;
    while (need > 0) {
        if (buffered_ == 0) {
            buffer_ = stream_.next_u64();
            buffered_ = 64;
        }
        const unsigned take = need < buffered_ ? need : buffered_;
        const std::uint64_t chunk = take == 64 ? buffer_ : (buffer_ >> (buffered_ - take)) & ((std::uint64_t{1} << take) - 1);
        out = take == 64 ? chunk : (out << take) | chunk;
        buffered_ -= take;
        need -= take;
    }
    consumed_ += count;
    return out;
}

BitString EntropySource::take_bitstring(std::size_t count) {
    BitString out(count);
    std::size_t pos = 0;
    while (pos < count) {
        const unsigned chunk = static_cast<unsigned>(std::min<std::size_t>(64, count - pos));
        const std::uint64_t v = take_bits(chunk);
        for (unsigned b = 0; b < chunk; ++b) {
            out.set(pos + b, (v >> (chunk - 1 - b)) & 1u);
        }
        pos += chunk;
    }
    return out;
}

double EntropySource::uniform53() { return static_cast<double>(take_bits(53)) * 0x1.0p-53; }

double EntropySource::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform53();  // (0, 1]
    const double u2 = uniform53();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

}  // namespace agf
