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

#include <random>

#include <catch_amalgamated.hpp>

#include "dicing/engine.hpp"
#include "dicing/verify.hpp"

using namespace dicing;

namespace {

EngineState golden_engine(VariantMode mode, std::string_view key_hex = verify::golden::kKeyHex) {
    const std::vector<uint8_t> key = from_hex(key_hex);
    const std::vector<uint8_t> ivv = from_hex(verify::golden::kIvHex);
    std::array<uint8_t, 32> iv{};
    std::copy(ivv.begin(), ivv.end(), iv.begin());
    const KeyMaterial km = build_key_material(key);
    return make_state(km, ivsetup(km, iv), mode);
}

}  // namespace

TEST_CASE("variant names round-trip") {
    for (VariantMode m : {VariantMode::kStandard, VariantMode::kR1, VariantMode::kR2,
                          VariantMode::kR3, VariantMode::kBig})
        CHECK(variant_from_name(variant_name(m)) == m);
    CHECK_FALSE(variant_from_name("bogus").has_value());
    CHECK_FALSE(variant_from_name("Standard").has_value());
}

TEST_CASE("step sizes decode the two nibbles") {
    CHECK(step_sizes(0x00) == std::pair<int, int>(1, 1));
    CHECK(step_sizes(0xff) == std::pair<int, int>(16, 16));
    CHECK(step_sizes(0x5a) == std::pair<int, int>(11, 6));
    CHECK(step_sizes(0xa5) == std::pair<int, int>(6, 11));
    for (int d = 0; d < 256; ++d) {
        const auto [a, b] = step_sizes(uint8_t(d));
        CHECK(a >= 1);
        CHECK(a <= 16);
        CHECK(b >= 1);
        CHECK(b <= 16);
    }
}

TEST_CASE("byte matrix transpose") {
    std::array<uint8_t, 16> m{};
    for (int i = 0; i < 16; ++i) m[size_t(i)] = uint8_t(i);
    const std::array<uint8_t, 16> t = transpose16(m);
    CHECK(t[1] == 4);
    CHECK(t[4] == 1);
    CHECK(t[0] == 0);
    CHECK(t[15] == 15);
    CHECK(transpose16(t) == m);
}

TEST_CASE("five-cycle state trace matches the reference") {
    EngineState st = golden_engine(VariantMode::kStandard);
    clock(st);
    CHECK(st.t == 1);
    CHECK(to_hex(gf2x::elem_to_bytes(st.alpha)) == "f58e5cb6995a0370f8270ab5c082677b");
    CHECK(to_hex(gf2x::elem_to_bytes(st.omega)) == "fbdc56fd89a9a6b7952c8201e16967e2");
    CHECK(to_hex(st.u) == "841e75a2d06285e3f134eac6d8b0f6f8");
    CHECK(to_hex(st.v) == "690ec5c414fc1933282bb513e5a37cc5");
    for (int i = 0; i < 4; ++i) clock(st);
    CHECK(st.t == 5);
    CHECK(to_hex(gf2x::elem_to_bytes(st.alpha)) == "8929b740f29c0fd818540362ab498b3b");
    CHECK(to_hex(gf2x::elem_to_bytes(st.omega)) == "65176dc270d8a2afe85bf079b1b4a7e0");
    CHECK(to_hex(st.u) == "f12f0d0d930061f883c7910c19c92969");
    CHECK(to_hex(st.v) == "6084c8670c03622372bb8f9a5edfe4ac");
}

TEST_CASE("keystream matches the reference vectors") {
    std::vector<uint8_t> z(64);
    EngineState st = golden_engine(VariantMode::kStandard);
    keystream(st, z);
    CHECK(to_hex(z) == verify::golden::kStd64);

    EngineState st16 = golden_engine(VariantMode::kStandard, verify::golden::kKey16Hex);
    keystream(st16, z);
    CHECK(to_hex(z) == verify::golden::kKey16Std64);

    std::vector<uint8_t> z32(32);
    EngineState r1 = golden_engine(VariantMode::kR1);
    keystream(r1, z32);
    CHECK(to_hex(z32) == verify::golden::kR1);
    EngineState r2 = golden_engine(VariantMode::kR2);
    keystream(r2, z32);
    CHECK(to_hex(z32) == verify::golden::kR2);
    EngineState r3 = golden_engine(VariantMode::kR3);
    keystream(r3, z32);
    CHECK(to_hex(z32) == verify::golden::kR3);
    EngineState big = golden_engine(VariantMode::kBig);
    keystream(big, z32);
    CHECK(to_hex(z32) == verify::golden::kBig);
}

TEST_CASE("dice byte sources differ by mode") {
    const EngineState std_st = golden_engine(VariantMode::kStandard);
    const EngineState r1_st = golden_engine(VariantMode::kR1);
    const EngineState r3_st = golden_engine(VariantMode::kR3);
    CHECK(dice_byte(std_st) == uint8_t(std_st.alpha.byte(0) ^ std_st.beta.byte(0)));
    CHECK(dice_byte(r1_st) == r1_st.alpha.byte(0));
    CHECK(dice_byte(r3_st) == uint8_t(r3_st.omega.byte(15) ^ r3_st.tau.byte(15)));
}

TEST_CASE("r3 leaves the controller untouched and r1 drops beta") {
    EngineState r3 = golden_engine(VariantMode::kR3);
    const gf2x::FieldElem alpha0 = r3.alpha, beta0 = r3.beta;
    for (int i = 0; i < 10; ++i) clock(r3);
    CHECK(r3.alpha == alpha0);
    CHECK(r3.beta == beta0);

    EngineState r1 = golden_engine(VariantMode::kR1);
    const gf2x::FieldElem b0 = r1.beta;
    clock(r1);
    CHECK(r1.beta == b0);
    CHECK_FALSE(r1.alpha == alpha0);
}

TEST_CASE("wide projector starts from omega and tau") {
    const EngineState big = golden_engine(VariantMode::kBig);
    for (int i = 0; i < 16; ++i) {
        CHECK(big.sigma.byte(size_t(i)) == big.omega.byte(size_t(i)));
        CHECK(big.sigma.byte(size_t(16 + i)) == big.tau.byte(size_t(i)));
    }
    // non-big modes leave sigma detached
    const EngineState std_st = golden_engine(VariantMode::kStandard);
    CHECK(std_st.sigma.field == nullptr);
}

TEST_CASE("streaming in arbitrary chunks equals one shot") {
    std::mt19937_64 gen(0xc0de);
    for (VariantMode mode : {VariantMode::kStandard, VariantMode::kBig}) {
        EngineState one = golden_engine(mode);
        std::vector<uint8_t> whole(257);
        keystream(one, whole);

        EngineState chunked = golden_engine(mode);
        std::vector<uint8_t> parts(257);
        size_t off = 0;
        while (off < parts.size()) {
            const size_t n = std::min(parts.size() - off, size_t(gen() % 40));
            keystream(chunked, std::span<uint8_t>(parts.data() + off, n));
            off += n;
        }
        CHECK(parts == whole);
    }
}

TEST_CASE("identical seeds give identical streams") {
    EngineState a = golden_engine(VariantMode::kStandard);
    EngineState b = golden_engine(VariantMode::kStandard);
    std::vector<uint8_t> za(1000), zb(1000);
    keystream(a, za);
    keystream(b, zb);
    CHECK(za == zb);
}

TEST_CASE("crypt is an involution at awkward sizes") {
    for (const size_t len : {size_t(0), size_t(1), size_t(15), size_t(16), size_t(17),
                             size_t(1'000'000)}) {
        std::vector<uint8_t> msg(len), ct(len), back(len);
        for (size_t i = 0; i < len; ++i) msg[i] = uint8_t(i * 97 + 13);
        EngineState enc = golden_engine(VariantMode::kStandard);
        crypt(enc, msg, ct);
        EngineState dec = golden_engine(VariantMode::kStandard);
        crypt(dec, ct, back);
        CHECK(back == msg);
        if (len > 0) CHECK(ct != msg);  // keystream is not the zero stream
    }
    EngineState st = golden_engine(VariantMode::kStandard);
    std::vector<uint8_t> in(4), out(5);
    CHECK_THROWS_AS(crypt(st, in, out), std::invalid_argument);
}

TEST_CASE("ciphertext equals plaintext xor keystream") {
    std::vector<uint8_t> msg(100);
    for (size_t i = 0; i < msg.size(); ++i) msg[i] = uint8_t(i);
    EngineState enc = golden_engine(VariantMode::kStandard);
    std::vector<uint8_t> ct(msg.size());
    crypt(enc, msg, ct);
    EngineState ks = golden_engine(VariantMode::kStandard);
    std::vector<uint8_t> z(msg.size());
    keystream(ks, z);
    for (size_t i = 0; i < msg.size(); ++i) CHECK(ct[i] == uint8_t(msg[i] ^ z[i]));
}

TEST_CASE("the r2 branch selects by the low alpha bit") {
    EngineState st = golden_engine(VariantMode::kR2);
    bool saw_qu = false, saw_qv = false;
    for (int i = 0; i < 64; ++i) {
        clock(st);
        std::array<uint8_t, 16> qu = st.u, qv = st.v;
        q_apply(st.km, qu);
        q_apply(st.km, qv);
        for (int j = 0; j < 16; ++j) {
            qu[size_t(j)] ^= st.v[size_t(j)];
            qv[size_t(j)] ^= st.u[size_t(j)];
        }
        const std::array<uint8_t, 16> out = combine(st);
        if (st.alpha.bit(0)) {
            CHECK(out == qv);
            saw_qv = true;
        } else {
            CHECK(out == qu);
            saw_qu = true;
        }
    }
    CHECK(saw_qu);
    CHECK(saw_qv);
}
