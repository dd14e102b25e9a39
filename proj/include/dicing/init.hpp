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

#ifndef DICING_INIT_HPP
#define DICING_INIT_HPP

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "dicing/bits.hpp"
#include "dicing/gf2x.hpp"
#include "dicing/keyschedule.hpp"

namespace dicing {

// ivsetup: whitens key and IV through the byte permutation phi, the keyed Q
// and the constant c = floor(e * 57!), then splits the result strings into
// the starting projector and memorizer states.

// phi spreads a 32-byte string by stepping through indices 4i mod 31; the
// last byte stays put. 4 * 8 = 32 = 1 (mod 31), so phi is a permutation.
inline std::array<uint8_t, 32> phi(std::span<const uint8_t, 32> in) {
    std::array<uint8_t, 32> out{};
    for (int i = 0; i < 31; ++i) out[size_t(i)] = in[size_t(4 * i % 31)];
    out[31] = in[31];
    return out;
}

// The integer part of e * 57!, little-endian. Two derivations below recompute
// it from scratch; tests and the self-test hold all three together.
inline const std::array<uint8_t, 32>& constant_c() {
    static const std::array<uint8_t, 32> c = [] {
        const auto v = from_hex(
            "9a044dcc2c81f9286587c050282541e1"
            "049495a3c69e39a5bf93b992b5618ef3");
        std::array<uint8_t, 32> a{};
        std::copy(v.begin(), v.end(), a.begin());
        return a;
    }();
    return c;
}

// e * 57! = sum over k of 57!/k!. The k <= 57 terms are integers; the tail
// sum_{k>57} 57!/k! lies strictly between 0 and 1, so the floor is exactly
// the integer part of the series.
inline gf2x::BigUint compute_c_series() {
    gf2x::BigUint total = 0, term = 1;  // term = 57!/57!
    total += term;
    for (int k = 57; k >= 1; --k) {
        term *= k;  // 57!/ (k-1)!
        total += term;
    }
    return total;
}

// Independent bracket: partial sums of the same series in exact rational
// arithmetic, with the tail bounded by a geometric series. Throws if the
// bracket fails to pin down a single integer.
inline gf2x::BigUint compute_c_bracket() {
    using Rat = boost::multiprecision::cpp_rational;
    Rat sum = 0, term = 1;  // term = 57!/k!, starting at k = 57
    for (int k = 57; k >= 1; --k) {
        sum += term;
        term *= k;
    }
    sum += term;  // k = 0
    term = 1;
    for (int k = 58; k <= 100; ++k) {
        term /= k;
        sum += term;
    }
    const Rat tail_bound = term;  // remaining tail < (57!/100!) / 100 < term
    const gf2x::BigUint lo = gf2x::BigUint(numerator(sum) / denominator(sum));
    const Rat hi_val = sum + tail_bound;
    const gf2x::BigUint hi = gf2x::BigUint(numerator(hi_val) / denominator(hi_val));
    if (lo != hi) throw std::logic_error("bracket for e * 57! spans two integers");
    return lo;
}

inline std::array<uint8_t, 32> biguint_to_le32(const gf2x::BigUint& n) {
    std::array<uint8_t, 32> out{};
    gf2x::BigUint v = n;
    for (size_t i = 0; i < 32 && v != 0; ++i) {
        out[i] = uint8_t(v & 0xff);
        v >>= 8;
    }
    if (v != 0) throw std::invalid_argument("value does not fit in 32 bytes");
    return out;
}

// F and G from the startup: F whitens one round, G chains three F rounds
// with the widened key and its complement folded in between.
inline std::array<uint8_t, 32> init_f(const KeyMaterial& km, std::span<const uint8_t, 32> in) {
    std::array<uint8_t, 32> out = phi(in);
    q_apply(km, out);
    return out;
}

inline std::array<uint8_t, 32> init_g(const KeyMaterial& km, std::span<const uint8_t, 32> in) {
    std::array<uint8_t, 32> t = init_f(km, in);
    for (int i = 0; i < 32; ++i) t[size_t(i)] ^= km.k_hat[size_t(i)];
    t = init_f(km, t);
    for (int i = 0; i < 32; ++i) t[size_t(i)] ^= km.k_check[size_t(i)];
    return init_f(km, t);
}

struct InitializedState {
    std::array<uint8_t, 16> eta{};           // output mask
    std::array<uint8_t, 16> u{}, v{};        // memorizers u_0, v_0
    gf2x::FieldElem alpha, beta;             // controller projectors
    gf2x::FieldElem omega, tau;              // combiner projectors
    std::array<std::array<uint8_t, 32>, 4> xi{};  // the raw xi strings, kept for inspection
};

// Splits the four xi strings into the initial states. Factored out of
// ivsetup so the all-zero xi_3 fallback is reachable from tests.
inline InitializedState load_state(const KeyMaterial& km,
                                   const std::array<std::array<uint8_t, 32>, 4>& xi) {
    InitializedState st;
    st.xi = xi;
    for (int i = 0; i < 16; ++i) st.eta[size_t(i)] = xi[0][size_t(i)] ^ xi[0][size_t(16 + i)];
    std::copy(xi[1].begin(), xi[1].begin() + 16, st.u.begin());
    std::copy(xi[1].begin() + 16, xi[1].end(), st.v.begin());

    std::array<uint8_t, 16> half{};
    std::copy(xi[2].begin(), xi[2].begin() + 16, half.begin());
    half[15] &= 0x7f;  // alpha_0 keeps bits 0..126
    st.alpha = gf2x::bytes_to_elem(half, gf2x::field_e1());
    std::copy(xi[2].begin() + 16, xi[2].end(), half.begin());
    half[15] &= 0x3f;  // beta_0 keeps bits 128..253 of xi_2
    st.beta = gf2x::bytes_to_elem(half, gf2x::field_e2());

    bool xi3_zero = true;
    for (uint8_t b : xi[3]) xi3_zero &= (b == 0);
    const std::array<uint8_t, 32>& src = xi3_zero ? km.k_hat : xi[3];
    std::copy(src.begin(), src.begin() + 16, half.begin());
    st.omega = gf2x::bytes_to_elem(half, gf2x::field_e3());
    std::copy(src.begin() + 16, src.end(), half.begin());
    st.tau = gf2x::bytes_to_elem(half, gf2x::field_e4());
    return st;
}

inline InitializedState ivsetup(const KeyMaterial& km, std::span<const uint8_t, 32> iv) {
    const std::array<uint8_t, 32>& c = constant_c();
    std::array<std::array<uint8_t, 32>, 4> xi{};
    std::array<uint8_t, 32> cur{};
    for (int i = 0; i < 32; ++i) cur[size_t(i)] = iv[size_t(i)] ^ c[size_t(i)];
    xi[0] = init_g(km, cur);
    for (int r = 1; r < 4; ++r) {
        for (int i = 0; i < 32; ++i) cur[size_t(i)] = xi[size_t(r - 1)][size_t(i)] ^ c[size_t(i)];
        xi[size_t(r)] = init_g(km, cur);
    }
    return load_state(km, xi);
}

// IVs shorter than 32 bytes are zero-padded on the right.
inline std::array<uint8_t, 32> pad_iv(std::span<const uint8_t> iv) {
    if (iv.size() > 32) throw std::invalid_argument("IV longer than 32 bytes");
    std::array<uint8_t, 32> out{};
    std::copy(iv.begin(), iv.end(), out.begin());
    return out;
}

}  // namespace dicing

#endif  // DICING_INIT_HPP
