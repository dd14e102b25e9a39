/*
 * Copyright 2026 the dicing-cpp authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DICING_BITS_HPP
#define DICING_BITS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dicing {

// Bit convention used everywhere in this library: bit i of a byte string is
// bit (i % 8) of byte i/8, bit 0 being the least significant. The coefficient
// of x^j in a field element is bit j under the same rule.

inline int bit_at(std::span<const uint8_t> s, size_t i) {
    return (s[i / 8] >> (i % 8)) & 1;
}

inline uint8_t rotl8(uint8_t v, int r) {
    r &= 7;
    return static_cast<uint8_t>((v << r) | (v >> (8 - r)));
}

template <size_t N>
inline std::array<uint8_t, N> xor_bytes(std::span<const uint8_t> a,
                                        std::span<const uint8_t> b) {
    std::array<uint8_t, N> out;
    for (size_t i = 0; i < N; ++i) out[i] = a[i] ^ b[i];
    return out;
}

inline std::string to_hex(std::span<const uint8_t> data) {
    static const char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(data.size() * 2);
    for (uint8_t b : data) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xF]);
    }
    return s;
}

inline int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

inline std::vector<uint8_t> from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0)
        throw std::invalid_argument("hex string has odd length");
    std::vector<uint8_t> out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); ++i) {
        int hi = hex_nibble(hex[2 * i]);
        int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw std::invalid_argument("invalid hex digit");
        out[i] = static_cast<uint8_t>((hi << 4) | lo);
    }
    return out;
}

// FNV-1a, used to fingerprint derived tables.
inline uint64_t fnv1a64(std::span<const uint8_t> data, uint64_t h = 0xcbf29ce484222325ull) {
    for (uint8_t b : data) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace dicing

#endif  // DICING_BITS_HPP
