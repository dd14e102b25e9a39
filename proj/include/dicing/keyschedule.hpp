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

#ifndef DICING_KEYSCHEDULE_HPP
#define DICING_KEYSCHEDULE_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>

#include "dicing/bits.hpp"
#include "dicing/gf2x.hpp"

namespace dicing {

// keysetup: turns the secret key into the keyed S-box S, the word transform
// L built from two triangular-factored matrices A and B, and the fused
// byte-to-word tables the engine runs Q through.

// 8x8 matrix over GF(2); row i is a bit mask, column j sits at bit j, matching
// the LSB-first bit order of bytes.
struct BitMatrix8 {
    std::array<uint8_t, 8> row{};

    static BitMatrix8 identity() {
        BitMatrix8 m;
        for (int i = 0; i < 8; ++i) m.row[i] = uint8_t(1) << i;
        return m;
    }

    uint8_t apply(uint8_t x) const {
        uint8_t y = 0;
        for (int i = 0; i < 8; ++i)
            y |= uint8_t(std::popcount(unsigned(row[i] & x)) & 1) << i;
        return y;
    }

    BitMatrix8 operator*(const BitMatrix8& o) const {
        BitMatrix8 r;
        for (int i = 0; i < 8; ++i) {
            uint8_t acc = 0;
            for (int k = 0; k < 8; ++k)
                if ((row[i] >> k) & 1) acc ^= o.row[k];
            r.row[i] = acc;
        }
        return r;
    }

    BitMatrix8 operator^(const BitMatrix8& o) const {
        BitMatrix8 r;
        for (int i = 0; i < 8; ++i) r.row[i] = row[i] ^ o.row[i];
        return r;
    }

    bool operator==(const BitMatrix8&) const = default;
};

// Reads the diagonal of the 8-byte block: entry i is bit 9i, i.e. bit i of
// byte i. Packed LSB-first into one byte.
inline uint8_t build_v(std::span<const uint8_t, 8> rho) {
    uint8_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint8_t((rho[i] >> i) & 1) << i;
    return v;
}

// M = T_u * T_l with unit diagonals: the strict upper part of T_u and the
// strict lower part of T_l both come straight from the bits of the block
// (entry (i,j) is bit 8i+j). Unit-triangular factors make M invertible for
// every key, which keeps L a candidate for a bijection.
inline BitMatrix8 build_m(std::span<const uint8_t, 8> rho) {
    BitMatrix8 tu = BitMatrix8::identity();
    BitMatrix8 tl = BitMatrix8::identity();
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            const uint8_t bit = (rho[i] >> j) & 1;
            if (i < j) tu.row[i] |= uint8_t(bit) << j;
            if (i > j) tl.row[i] |= uint8_t(bit) << j;
        }
    return tu * tl;
}

// Base S-box: 5 * (x ^ 3)^127 over the degree-8 field. x -> x^127 is a
// bijection there (gcd(127, 255) = 1), so S0 is a permutation.
inline const std::array<uint8_t, 256>& sbox0() {
    static const std::array<uint8_t, 256> table = [] {
        std::array<uint8_t, 256> t{};
        const gf2x::FieldSpec& f = gf2x::field_k();
        const gf2x::FieldElem five = gf2x::elem_from_word(f, 5);
        for (int x = 0; x < 256; ++x) {
            gf2x::FieldElem e = gf2x::elem_from_word(f, uint64_t(x ^ 3));
            e = gf2x::naive_mul(five, gf2x::pow(e, 127));
            t[size_t(x)] = uint8_t(e.limb[0]);
        }
        return t;
    }();
    return table;
}

struct KeyMaterial {
    std::array<uint8_t, 256> sbox{};   // S(x) = S0(x ^ v2) ^ v1
    BitMatrix8 a, b, ab;               // ab = a ^ b
    uint8_t v1 = 0, v2 = 0;
    std::array<uint8_t, 32> k_hat{};   // key widened to 256 bits
    std::array<uint8_t, 32> k_check{}; // complemented halves of k_hat, swapped
    int key_bits = 0;
    // Fused S-then-L lookup: for byte value c at position j of a word,
    // qtab[j][c] is the word L[.][j] * S(c), little-endian.
    std::array<std::array<uint32_t, 256>, 4> qtab{};
};

// Block layout of L over {a, b, a^b}; the same pattern drives the fused
// tables, the reference path and the invertibility check.
inline constexpr int kLPattern[4][4] = {
    {0, 1, 0, 2},
    {1, 0, 2, 0},
    {0, 2, 0, 1},
    {2, 0, 1, 0},
};

inline std::array<uint8_t, 16> derive_lambda(std::span<const uint8_t> key) {
    std::array<uint8_t, 16> lambda{};
    if (key.size() == 32) {
        for (int i = 0; i < 16; ++i) lambda[i] = key[i] ^ key[16 + i];
    } else if (key.size() == 16) {
        for (int i = 0; i < 16; ++i) lambda[i] = key[i];
    } else {
        throw std::invalid_argument("key must be 16 or 32 bytes");
    }
    return lambda;
}

inline KeyMaterial build_key_material(std::span<const uint8_t> key) {
    KeyMaterial km;
    const std::array<uint8_t, 16> lambda = derive_lambda(key);
    km.key_bits = int(key.size()) * 8;

    const std::span<const uint8_t, 8> lo(lambda.data(), 8);
    const std::span<const uint8_t, 8> hi(lambda.data() + 8, 8);
    km.a = build_m(lo);
    km.b = build_m(hi);
    km.ab = km.a ^ km.b;
    km.v1 = build_v(lo) ^ build_v(hi);
    km.v2 = build_v(lo) ^ rotl8(build_v(hi), 1);

    const std::array<uint8_t, 256>& s0 = sbox0();
    for (int x = 0; x < 256; ++x) km.sbox[size_t(x)] = s0[size_t(x ^ km.v2)] ^ km.v1;

    const BitMatrix8* blocks[3] = {&km.a, &km.b, &km.ab};
    for (int j = 0; j < 4; ++j)
        for (int c = 0; c < 256; ++c) {
            const uint8_t s = km.sbox[size_t(c)];
            uint32_t w = 0;
            for (int i = 0; i < 4; ++i)
                w |= uint32_t(blocks[kLPattern[i][j]]->apply(s)) << (8 * i);
            km.qtab[size_t(j)][size_t(c)] = w;
        }

    if (key.size() == 32) {
        std::copy(key.begin(), key.end(), km.k_hat.begin());
    } else {
        for (int i = 0; i < 16; ++i) {
            km.k_hat[size_t(i)] = key[size_t(i)];
            km.k_hat[size_t(16 + i)] = uint8_t(~key[size_t(i)]);
        }
    }
    for (int i = 0; i < 16; ++i) {
        km.k_check[size_t(i)] = uint8_t(~km.k_hat[size_t(16 + i)]);
        km.k_check[size_t(16 + i)] = uint8_t(~km.k_hat[size_t(i)]);
    }
    return km;
}

// L on one word: each output byte i is the XOR of block (i,j) applied to
// input byte j. Used by the reference path; the engine goes through qtab.
inline uint32_t l_apply_word(const KeyMaterial& km, uint32_t w) {
    const BitMatrix8* blocks[3] = {&km.a, &km.b, &km.ab};
    uint32_t out = 0;
    for (int i = 0; i < 4; ++i) {
        uint8_t acc = 0;
        for (int j = 0; j < 4; ++j)
            acc ^= blocks[kLPattern[i][j]]->apply(uint8_t(w >> (8 * j)));
        out |= uint32_t(acc) << (8 * i);
    }
    return out;
}

// Q = L of S, applied in place to a string of whole words.
inline void q_apply(const KeyMaterial& km, std::span<uint8_t> data) {
    if (data.size() % 4 != 0) throw std::invalid_argument("Q needs a multiple of 4 bytes");
    for (size_t off = 0; off < data.size(); off += 4) {
        const uint32_t w = km.qtab[0][data[off]] ^ km.qtab[1][data[off + 1]] ^
                           km.qtab[2][data[off + 2]] ^ km.qtab[3][data[off + 3]];
        data[off] = uint8_t(w);
        data[off + 1] = uint8_t(w >> 8);
        data[off + 2] = uint8_t(w >> 16);
        data[off + 3] = uint8_t(w >> 24);
    }
}

// Definitional Q: substitute every byte, then apply L word by word through
// the matrices. The fused tables are tested against this.
inline void q_apply_reference(const KeyMaterial& km, std::span<uint8_t> data) {
    if (data.size() % 4 != 0) throw std::invalid_argument("Q needs a multiple of 4 bytes");
    for (auto& byte : data) byte = km.sbox[byte];
    for (size_t off = 0; off < data.size(); off += 4) {
        uint32_t w = 0;
        for (int j = 0; j < 4; ++j) w |= uint32_t(data[off + size_t(j)]) << (8 * j);
        w = l_apply_word(km, w);
        for (int j = 0; j < 4; ++j) data[off + size_t(j)] = uint8_t(w >> (8 * j));
    }
}

// Rank check of L as a 32x32 bit matrix by Gaussian elimination.
inline bool l_invertible(const KeyMaterial& km) {
    const BitMatrix8* blocks[3] = {&km.a, &km.b, &km.ab};
    std::array<uint32_t, 32> rows{};
    for (int i = 0; i < 4; ++i)
        for (int bi = 0; bi < 8; ++bi) {
            uint32_t r = 0;
            for (int j = 0; j < 4; ++j)
                r |= uint32_t(blocks[kLPattern[i][j]]->row[bi]) << (8 * j);
            rows[size_t(8 * i + bi)] = r;
        }
    int rank = 0;
    for (int col = 0; col < 32; ++col) {
        int pivot = -1;
        for (int r = rank; r < 32; ++r)
            if ((rows[size_t(r)] >> col) & 1) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(rows[size_t(rank)], rows[size_t(pivot)]);
        for (int r = 0; r < 32; ++r)
            if (r != rank && ((rows[size_t(r)] >> col) & 1)) rows[size_t(r)] ^= rows[size_t(rank)];
        ++rank;
    }
    return rank == 32;
}

}  // namespace dicing

#endif  // DICING_KEYSCHEDULE_HPP
