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

#ifndef DICING_ENGINE_HPP
#define DICING_ENGINE_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>

#include "dicing/gf2x.hpp"
#include "dicing/init.hpp"
#include "dicing/keyschedule.hpp"

namespace dicing {

// The keystream generator. Each cycle reads a dice byte from the previous
// state, steps the combiner projectors by the dice-selected powers of x,
// folds them into the memorizers, steps the controller, and emits one
// 16-byte block through the combining function.

enum class VariantMode {
    kStandard,  // full design: two controller and two combiner projectors
    kR1,        // reduced: beta removed, output Q(u) ^ v
    kR2,        // reduced: output branches on the low bit of alpha
    kR3,        // reduced: controller removed, dice from omega/tau top bytes
    kBig,       // combiner projectors merged into one degree-256 projector
};

inline std::string_view variant_name(VariantMode m) {
    switch (m) {
        case VariantMode::kStandard: return "standard";
        case VariantMode::kR1: return "r1";
        case VariantMode::kR2: return "r2";
        case VariantMode::kR3: return "r3";
        case VariantMode::kBig: return "big";
    }
    return "?";
}

inline std::optional<VariantMode> variant_from_name(std::string_view name) {
    for (VariantMode m : {VariantMode::kStandard, VariantMode::kR1, VariantMode::kR2,
                          VariantMode::kR3, VariantMode::kBig})
        if (name == variant_name(m)) return m;
    return std::nullopt;
}

struct EngineState {
    KeyMaterial km;
    VariantMode mode = VariantMode::kStandard;
    gf2x::FieldElem alpha, beta;   // controller states
    gf2x::FieldElem omega, tau;    // combiner states
    gf2x::FieldElem sigma;         // wide projector (kBig only)
    std::array<uint8_t, 16> u{}, v{}, eta{};
    uint64_t t = 0;
    // partially consumed output block, so streaming calls can resume mid-block
    std::array<uint8_t, 16> pending{};
    size_t pending_used = 16;
};

inline EngineState make_state(const KeyMaterial& km, const InitializedState& init,
                              VariantMode mode) {
    EngineState st;
    st.km = km;
    st.mode = mode;
    st.alpha = init.alpha;
    st.beta = init.beta;
    st.omega = init.omega;
    st.tau = init.tau;
    st.u = init.u;
    st.v = init.v;
    st.eta = init.eta;
    if (mode == VariantMode::kBig) {
        // the wide projector starts from the same 32 bytes omega_0 | tau_0
        std::array<uint8_t, 32> wide{};
        for (int i = 0; i < 16; ++i) {
            wide[size_t(i)] = init.omega.byte(size_t(i));
            wide[size_t(16 + i)] = init.tau.byte(size_t(i));
        }
        st.sigma = gf2x::bytes_to_elem(wide, gf2x::field_big());
    }
    return st;
}

// The dice byte for the upcoming cycle, read from the time t-1 state.
inline uint8_t dice_byte(const EngineState& st) {
    switch (st.mode) {
        case VariantMode::kR1: return st.alpha.byte(0);
        case VariantMode::kR3: return uint8_t(st.omega.byte(15) ^ st.tau.byte(15));
        default: return uint8_t(st.alpha.byte(0) ^ st.beta.byte(0));
    }
}

// a from the low nibble, b from the high nibble, both in 1..16.
inline std::pair<int, int> step_sizes(uint8_t dice) {
    return {1 + (dice & 15), 1 + (dice >> 4)};
}

inline void clock(EngineState& st) {
    const auto [a, b] = step_sizes(dice_byte(st));
    if (st.mode == VariantMode::kBig) {
        gf2x::mul_x_pow_inplace(st.sigma, a);
        for (int i = 0; i < 16; ++i) {
            st.u[size_t(i)] ^= st.sigma.byte(size_t(i));
            st.v[size_t(i)] ^= st.sigma.byte(size_t(16 + i));
        }
    } else {
        gf2x::mul_x_pow_inplace(st.omega, a);
        gf2x::mul_x_pow_inplace(st.tau, b);
        for (int i = 0; i < 16; ++i) {
            st.u[size_t(i)] ^= st.omega.byte(size_t(i));
            st.v[size_t(i)] ^= st.tau.byte(size_t(i));
        }
    }
    if (st.mode != VariantMode::kR3) gf2x::mul_x_pow_inplace(st.alpha, 8);
    if (st.mode == VariantMode::kStandard || st.mode == VariantMode::kR2 ||
        st.mode == VariantMode::kBig)
        gf2x::mul_x_pow_inplace(st.beta, 8);
    ++st.t;
}

// 16 bytes as a row-major 4x4 byte matrix, transposed.
inline std::array<uint8_t, 16> transpose16(const std::array<uint8_t, 16>& in) {
    std::array<uint8_t, 16> out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[size_t(4 * r + c)] = in[size_t(4 * c + r)];
    return out;
}

// The combining function for the current mode, applied to the time t state.
inline std::array<uint8_t, 16> combine(const EngineState& st) {
    std::array<uint8_t, 16> block = st.u;
    if (st.mode == VariantMode::kR2 && st.alpha.bit(0)) {
        block = st.v;
        q_apply(st.km, block);
        for (int i = 0; i < 16; ++i) block[size_t(i)] ^= st.u[size_t(i)];
        return block;
    }
    q_apply(st.km, block);
    for (int i = 0; i < 16; ++i) block[size_t(i)] ^= st.v[size_t(i)];
    if (st.mode == VariantMode::kStandard || st.mode == VariantMode::kBig) {
        block = transpose16(block);
        q_apply(st.km, block);
        for (int i = 0; i < 16; ++i) block[size_t(i)] ^= st.eta[size_t(i)];
    }
    return block;
}

// Fills out with keystream, continuing wherever the previous call stopped.
inline void keystream(EngineState& st, std::span<uint8_t> out) {
    size_t off = 0;
    while (off < out.size()) {
        if (st.pending_used == 16) {
            clock(st);
            const std::array<uint8_t, 16> block = combine(st);
            // whole blocks land straight in the caller's buffer; only a
            // trailing partial block goes through the carry-over buffer
            if (out.size() - off >= 16) {
                std::copy_n(block.begin(), 16, out.begin() + off);
                off += 16;
                continue;
            }
            st.pending = block;
            st.pending_used = 0;
        }
        const size_t n = std::min(out.size() - off, size_t(16) - st.pending_used);
        std::copy_n(st.pending.begin() + st.pending_used, n, out.begin() + off);
        st.pending_used += n;
        off += n;
    }
}

// XORs keystream over in; encryption and decryption are the same operation.
inline void crypt(EngineState& st, std::span<const uint8_t> in, std::span<uint8_t> out) {
    if (in.size() != out.size()) throw std::invalid_argument("size mismatch");
    std::array<uint8_t, 4096> buf;
    size_t off = 0;
    while (off < in.size()) {
        const size_t n = std::min(in.size() - off, buf.size());
        keystream(st, std::span<uint8_t>(buf.data(), n));
        for (size_t i = 0; i < n; ++i) out[off + i] = uint8_t(in[off + i] ^ buf[i]);
        off += n;
    }
}

}  // namespace dicing

#endif  // DICING_ENGINE_HPP
