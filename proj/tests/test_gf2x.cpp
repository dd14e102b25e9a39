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

#include "dicing/gf2x.hpp"

using namespace dicing::gf2x;

namespace {

FieldElem random_elem(const FieldSpec& f, std::mt19937_64& gen) {
    FieldElem e(f);
    for (auto& limb : e.limb) limb = gen();
    for (int i = f.degree(); i < 256; ++i) e.limb[size_t(i) / 64] &= ~(uint64_t(1) << (i % 64));
    return e;
}

const FieldSpec& field_by_index(int i) {
    switch (i) {
        case 0: return field_k();
        case 1: return field_e1();
        case 2: return field_e2();
        case 3: return field_e3();
        case 4: return field_e4();
        default: return field_big();
    }
}

}  // namespace

TEST_CASE("product forms expand to the expected exponent sets") {
    // x^127 + (x^89 + x^41 + 1)(x^3 + 1)
    CHECK(expand_polynomial({127, {89, 41, 0}, {3, 0}}) ==
          std::vector<int>{127, 92, 89, 44, 41, 3, 0});
    // cross terms that collide must cancel: (x + 1)(x + 1) = x^2 + 1
    CHECK(expand_polynomial({-1, {1, 0}, {1, 0}}) == std::vector<int>{2, 0});
    // empty second factor acts as multiplying by 1
    CHECK(expand_polynomial({-1, {8, 6, 5, 1, 0}, {}}) == std::vector<int>{8, 6, 5, 1, 0});
}

TEST_CASE("FieldSpec rejects malformed moduli") {
    CHECK_THROWS_AS(FieldSpec({8, 4, 4, 0}, false), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec({8, 4}, false), std::invalid_argument);      // no constant term
    CHECK_THROWS_AS(FieldSpec({300, 5, 0}, false), std::invalid_argument); // too large
    CHECK_THROWS_AS(FieldSpec({0}, false), std::invalid_argument);
}

TEST_CASE("standard fields have the right shape") {
    CHECK(field_k().degree() == 8);
    CHECK(field_e1().degree() == 127);
    CHECK(field_e2().degree() == 126);
    CHECK(field_e3().degree() == 128);
    CHECK(field_e4().degree() == 128);
    CHECK(field_big().degree() == 256);
    CHECK(field_e1().byte_length() == 16);
    CHECK(field_e2().byte_length() == 16);
    CHECK(field_big().byte_length() == 32);
    // every big field qualifies for single-pass table reduction
    for (int i = 1; i < 6; ++i) CHECK(field_by_index(i).has_reduction_table());
    CHECK_FALSE(field_k().has_reduction_table());
}

TEST_CASE("shifted product equals the schoolbook oracle in every field") {
    std::mt19937_64 gen(0x1234);
    for (int fi = 0; fi < 6; ++fi) {
        const FieldSpec& f = field_by_index(fi);
        const FieldElem x = x_elem(f);
        for (int trial = 0; trial < 40; ++trial) {
            const FieldElem e = random_elem(f, gen);
            FieldElem xk = one_elem(f);
            for (int k = 1; k <= 16; ++k) {
                xk = naive_mul(xk, x);  // xk = x^k
                CHECK(mul_x_pow(e, k) == naive_mul(e, xk));
            }
        }
    }
}

TEST_CASE("mul_x_pow rejects exponents outside 1..16") {
    const FieldElem e = one_elem(field_e3());
    CHECK_THROWS_AS(mul_x_pow(e, 0), std::invalid_argument);
    CHECK_THROWS_AS(mul_x_pow(e, 17), std::invalid_argument);
    CHECK_THROWS_AS(mul_x_pow(e, -3), std::invalid_argument);
}

TEST_CASE("degree-8 multiplication is a field: exhaustive structure checks") {
    const FieldSpec& f = field_k();
    // multiplication table once, then exhaustive associativity/commutativity
    static uint8_t table[256][256];
    for (int a = 0; a < 256; ++a)
        for (int b = 0; b < 256; ++b)
            table[a][b] = uint8_t(
                naive_mul(elem_from_word(f, uint64_t(a)), elem_from_word(f, uint64_t(b))).limb[0]);

    bool assoc = true, comm = true;
    for (int a = 0; a < 256 && assoc; ++a)
        for (int b = 0; b < 256 && assoc; ++b)
            for (int c = 0; c < 256; ++c) {
                if (table[table[a][b]][c] != table[a][table[b][c]]) { assoc = false; break; }
            }
    for (int a = 0; a < 256; ++a)
        for (int b = 0; b < a; ++b) comm = comm && table[a][b] == table[b][a];
    CHECK(assoc);
    CHECK(comm);

    // distributivity and the Lagrange identity x^255 = 1 on all nonzero elements
    std::mt19937_64 gen(5);
    for (int t = 0; t < 2000; ++t) {
        const int a = int(gen() & 0xff), b = int(gen() & 0xff), c = int(gen() & 0xff);
        CHECK(table[a][b ^ c] == (table[a][b] ^ table[a][c]));
    }
    for (int a = 1; a < 256; ++a) {
        const FieldElem e = elem_from_word(f, uint64_t(a));
        CHECK(pow(e, 255) == one_elem(f));
    }
}

TEST_CASE("pow edge cases") {
    const FieldSpec& f = field_e3();
    std::mt19937_64 gen(77);
    const FieldElem e = random_elem(f, gen);
    CHECK(pow(e, 0) == one_elem(f));
    CHECK(pow(e, 1) == e);
    CHECK(pow(e, 2) == naive_mul(e, e));
    // x^(2^128 - 1) = 1 since p3 is primitive
    const BigUint group = (BigUint(1) << 128) - 1;
    CHECK(pow(x_elem(f), group) == one_elem(f));
}

TEST_CASE("byte serialization round-trips and validates") {
    std::mt19937_64 gen(9);
    for (int fi = 0; fi < 6; ++fi) {
        const FieldSpec& f = field_by_index(fi);
        const FieldElem e = random_elem(f, gen);
        const std::vector<uint8_t> bytes = elem_to_bytes(e);
        REQUIRE(bytes.size() == f.byte_length());
        CHECK(bytes_to_elem(bytes, f) == e);
    }
    // wrong length
    std::vector<uint8_t> short_buf(15, 0);
    CHECK_THROWS_AS(bytes_to_elem(short_buf, field_e3()), std::invalid_argument);
    // set bits at/above the degree (bit 127 in a degree-127 field)
    std::vector<uint8_t> bad(16, 0);
    bad[15] = 0x80;
    CHECK_THROWS_AS(bytes_to_elem(bad, field_e1()), std::invalid_argument);
    CHECK_THROWS_AS(elem_from_word(field_k(), 256), std::invalid_argument);
}

TEST_CASE("verify_primitive validates the factorization before trusting it") {
    // wrong product
    CHECK_THROWS_AS(verify_primitive(field_e1(), {{3, 1}}), BadFactorization);
    // right product, composite factor: 2^126 - 1 with 9 merged into one entry
    Factorization bogus = {{9, 1},     {3, 1},      {7, 2},      {19, 1},
                           {43, 1},    {73, 1},     {127, 1},    {337, 1},
                           {5419, 1},  {92737, 1},  {649657, 1}, {BigUint("77158673929"), 1}};
    CHECK_THROWS_AS(verify_primitive(field_e2(), bogus), BadFactorization);
    CHECK_THROWS_AS(factors_2pow_minus1(64), std::invalid_argument);
}

TEST_CASE("x generates the full group of every cipher field") {
    CHECK(verify_primitive(field_e1(), factors_2pow_minus1(127)));
    CHECK(verify_primitive(field_e2(), factors_2pow_minus1(126)));
    CHECK(verify_primitive(field_e3(), factors_2pow_minus1(128)));
    CHECK(verify_primitive(field_e4(), factors_2pow_minus1(128)));
    CHECK(verify_primitive(field_big(), factors_2pow_minus1(256)));
}

TEST_CASE("a non-primitive but irreducible modulus is told apart") {
    // x^8 + x^4 + x^3 + x + 1 is irreducible; the order of x in it is 51
    const FieldSpec weak({8, 4, 3, 1, 0}, false);
    CHECK(is_irreducible_by_trial_division(weak));
    const Factorization f255 = {{3, 1}, {5, 1}, {17, 1}};
    CHECK_FALSE(verify_primitive(weak, f255));
    CHECK(multiplicative_order_of_x(weak, f255) == 51);
    // brute-force cross-check of the order
    const FieldElem x = x_elem(weak);
    FieldElem acc = x;
    int order = 1;
    while (!(acc == one_elem(weak))) {
        acc = naive_mul(acc, x);
        ++order;
    }
    CHECK(order == 51);
    CHECK(multiplicative_order_of_x(field_k(), f255) == 255);
}

TEST_CASE("trial division flags reducible polynomials") {
    CHECK(is_irreducible_by_trial_division(field_k()));
    const FieldSpec sq({4, 2, 0}, false);  // (x^2 + x + 1)^2
    CHECK_FALSE(is_irreducible_by_trial_division(sq));
    const FieldSpec ok({4, 1, 0}, false);
    CHECK(is_irreducible_by_trial_division(ok));
    const FieldSpec big({30, 1, 0}, false);
    CHECK_THROWS_AS(is_irreducible_by_trial_division(big), std::invalid_argument);
}

TEST_CASE("stored factorizations multiply back to their group orders") {
    for (int degree : {126, 127, 128, 256}) {
        BigUint prod = 1;
        for (const auto& [q, mult] : factors_2pow_minus1(degree))
            for (int i = 0; i < mult; ++i) prod *= q;
        CHECK(prod == (BigUint(1) << degree) - 1);
    }
}

TEST_CASE("addition is the xor of coefficient vectors") {
    std::mt19937_64 gen(4);
    const FieldSpec& f = field_e4();
    const FieldElem a = random_elem(f, gen), b = random_elem(f, gen);
    const FieldElem s = a ^ b;
    for (size_t i = 0; i < 4; ++i) CHECK(s.limb[i] == (a.limb[i] ^ b.limb[i]));
    CHECK((a ^ a).is_zero());
    // mismatched fields refuse to combine
    CHECK_THROWS_AS(one_elem(field_e3()) ^ one_elem(field_e4()), std::logic_error);
    CHECK_THROWS_AS(naive_mul(one_elem(field_e3()), one_elem(field_e4())), std::logic_error);
}
