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

#ifndef DICING_GF2X_HPP
#define DICING_GF2X_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include "dicing/bits.hpp"

namespace dicing::gf2x {

using BigUint = boost::multiprecision::cpp_int;

// Binary fields F[x]/p(x) for every degree the cipher touches (8 through 256
// plus the reduced-scale analogues). Elements are coefficient bit vectors in
// 256-bit containers; bit j of the vector is the coefficient of x^j, matching
// the byte-string convention in bits.hpp.

inline constexpr int kMaxDegree = 256;

// A modulus given as leading term plus a product of two exponent lists,
// e.g. x^127 + (x^89 + x^41 + 1)(x^3 + 1). An empty factor acts as 1 and a
// negative leading exponent means "no extra term".
struct PolyProductForm {
    int leading = -1;
    std::vector<int> factor_a;
    std::vector<int> factor_b;
};

// Expands the product over GF(2) and returns the exponent set, descending.
inline std::vector<int> expand_polynomial(const PolyProductForm& form) {
    std::set<int> acc;
    const std::vector<int> unit{0};
    const std::vector<int>& fb = form.factor_b.empty() ? unit : form.factor_b;
    for (int a : form.factor_a)
        for (int b : fb) {
            int e = a + b;
            if (!acc.insert(e).second) acc.erase(e);
        }
    if (form.leading >= 0) {
        if (!acc.insert(form.leading).second) acc.erase(form.leading);
    }
    return {acc.rbegin(), acc.rend()};
}

class FieldSpec {
  public:
    FieldSpec(std::vector<int> exponents, bool primitive_claimed)
        : exponents_(std::move(exponents)), primitive_claimed_(primitive_claimed) {
        std::sort(exponents_.begin(), exponents_.end(), std::greater<int>());
        if (exponents_.size() < 2 || exponents_.back() != 0)
            throw std::invalid_argument("modulus needs a constant term");
        if (std::adjacent_find(exponents_.begin(), exponents_.end()) != exponents_.end())
            throw std::invalid_argument("duplicate exponent in modulus");
        degree_ = exponents_.front();
        if (degree_ < 2 || degree_ > kMaxDegree)
            throw std::invalid_argument("unsupported field degree");
        modulus_.fill(0);
        for (int e : exponents_) modulus_[e / 64] |= uint64_t(1) << (e % 64);
        // One reduction pass handles a 16-bit overflow window whenever the
        // sub-leading terms cannot themselves spill past the degree.
        int second = exponents_[1];
        if (second + 15 < degree_) build_reduction_tables(second);
    }

    int degree() const { return degree_; }
    const std::vector<int>& exponents() const { return exponents_; }
    bool primitive_claimed() const { return primitive_claimed_; }
    const std::array<uint64_t, 5>& modulus() const { return modulus_; }
    bool has_reduction_table() const { return has_table_; }
    size_t byte_length() const { return (size_t(degree_) + 7) / 8; }

    const std::array<uint64_t, 4>& reduce_low(uint8_t b) const { return red_lo_[b]; }
    const std::array<uint64_t, 4>& reduce_high(uint8_t b) const { return red_hi_[b]; }

    FieldSpec(const FieldSpec&) = delete;
    FieldSpec& operator=(const FieldSpec&) = delete;

  private:
    void build_reduction_tables(int /*second*/) {
        // red_lo[b] = b(x) * (p(x) - x^degree), red_hi[b] the same shifted by 8
        std::array<uint64_t, 4> low{};
        for (size_t i = 0; i < 4; ++i) low[i] = modulus_[i];
        low[degree_ / 64] &= ~(uint64_t(1) << (degree_ % 64));
        for (int b = 0; b < 256; ++b) {
            std::array<uint64_t, 4> lo{}, hi{};
            for (int bit = 0; bit < 8; ++bit) {
                if (!((b >> bit) & 1)) continue;
                xor_shifted4(lo, low, bit);
                xor_shifted4(hi, low, bit + 8);
            }
            red_lo_[b] = lo;
            red_hi_[b] = hi;
        }
        has_table_ = true;
    }

    static void xor_shifted4(std::array<uint64_t, 4>& acc,
                             const std::array<uint64_t, 4>& v, int s) {
        if (s == 0) {
            for (size_t i = 0; i < 4; ++i) acc[i] ^= v[i];
            return;
        }
        acc[0] ^= v[0] << s;
        for (size_t i = 1; i < 4; ++i) acc[i] ^= (v[i] << s) | (v[i - 1] >> (64 - s));
    }

    std::vector<int> exponents_;
    int degree_ = 0;
    bool primitive_claimed_ = false;
    bool has_table_ = false;
    std::array<uint64_t, 5> modulus_{};
    std::array<std::array<uint64_t, 4>, 256> red_lo_{};
    std::array<std::array<uint64_t, 4>, 256> red_hi_{};
};

struct FieldElem {
    std::array<uint64_t, 4> limb{};
    const FieldSpec* field = nullptr;

    FieldElem() = default;
    explicit FieldElem(const FieldSpec& f) : field(&f) {}

    bool is_zero() const { return (limb[0] | limb[1] | limb[2] | limb[3]) == 0; }
    int bit(size_t i) const { return (limb[i / 64] >> (i % 64)) & 1; }
    uint8_t byte(size_t i) const {
        return static_cast<uint8_t>(limb[i / 8] >> (8 * (i % 8)));
    }
    bool operator==(const FieldElem& o) const {
        return field == o.field && limb == o.limb;
    }
};

inline FieldElem zero_elem(const FieldSpec& f) { return FieldElem(f); }

inline FieldElem one_elem(const FieldSpec& f) {
    FieldElem e(f);
    e.limb[0] = 1;
    return e;
}

inline FieldElem x_elem(const FieldSpec& f) {
    FieldElem e(f);
    e.limb[0] = 2;
    return e;
}

// Low word constructor, mainly for the small fields in tests and experiments.
inline FieldElem elem_from_word(const FieldSpec& f, uint64_t bits) {
    if (f.degree() < 64 && (bits >> f.degree()) != 0)
        throw std::invalid_argument("bits beyond field degree");
    FieldElem e(f);
    e.limb[0] = bits;
    return e;
}

inline FieldElem operator^(const FieldElem& a, const FieldElem& b) {
    if (a.field != b.field) throw std::logic_error("field mismatch");
    FieldElem r = a;
    for (size_t i = 0; i < 4; ++i) r.limb[i] ^= b.limb[i];
    return r;
}

namespace detail {

inline int bit_of(const std::array<uint64_t, 9>& w, int i) {
    return (w[i / 64] >> (i % 64)) & 1;
}

inline void xor_mod_into(std::array<uint64_t, 9>& acc,
                         const std::array<uint64_t, 5>& mod, int shift) {
    const int lo = shift / 64, bo = shift % 64;
    if (bo == 0) {
        for (int i = 0; i < 5; ++i) acc[lo + i] ^= mod[i];
        return;
    }
    for (int i = 0; i < 5; ++i) {
        acc[lo + i] ^= mod[i] << bo;
        acc[lo + i + 1] ^= mod[i] >> (64 - bo);
    }
}

inline void xor_elem_into(std::array<uint64_t, 9>& acc,
                          const std::array<uint64_t, 4>& v, int shift) {
    const int lo = shift / 64, bo = shift % 64;
    if (bo == 0) {
        for (int i = 0; i < 4; ++i) acc[lo + i] ^= v[i];
        return;
    }
    for (int i = 0; i < 4; ++i) {
        acc[lo + i] ^= v[i] << bo;
        acc[lo + i + 1] ^= v[i] >> (64 - bo);
    }
}

// Long division of acc by the modulus, scanning from top_bit downward.
inline void reduce_wide(std::array<uint64_t, 9>& acc, const FieldSpec& f, int top_bit) {
    for (int i = top_bit; i >= f.degree(); --i)
        if (bit_of(acc, i)) xor_mod_into(acc, f.modulus(), i - f.degree());
}

inline void assert_reduced(const FieldElem& e) {
#ifndef NDEBUG
    for (int i = e.field->degree(); i < 256; ++i)
        assert(e.bit(i) == 0 && "element has coefficients at or above the degree");
#else
    (void)e;
#endif
}

}  // namespace detail

namespace detail {

// Shared core of the projector update: x^k * limbs mod f. Works entirely in
// locals and returns by value so the callers' stores cannot pessimize the
// table loads.
inline std::array<uint64_t, 4> stepped_limbs(const FieldSpec& f,
                                             const std::array<uint64_t, 4>& in, int k) {
    std::array<uint64_t, 5> t;
    t[0] = in[0] << k;
    for (int i = 1; i < 4; ++i) t[i] = (in[i] << k) | (in[i - 1] >> (64 - k));
    t[4] = in[3] >> (64 - k);

    const int d = f.degree();
    std::array<uint64_t, 4> out;
    if (f.has_reduction_table()) {
        const int li = d / 64, sh = d % 64;
        uint64_t w = t[li] >> sh;
        if (sh != 0 && li + 1 < 5) w |= t[li + 1] << (64 - sh);
        w &= 0xFFFF;
        // clear the overflow window; nothing above it can be set for k <= 16
        t[li] &= ~(uint64_t(0xFFFF) << sh);
        if (sh > 48 && li + 1 < 5) t[li + 1] &= ~(uint64_t(0xFFFF) >> (64 - sh));
        const auto& lo = f.reduce_low(static_cast<uint8_t>(w));
        const auto& hi = f.reduce_high(static_cast<uint8_t>(w >> 8));
        for (int i = 0; i < 4; ++i) out[i] = t[i] ^ lo[i] ^ hi[i];
    } else {
        std::array<uint64_t, 9> wide{};
        for (int i = 0; i < 5; ++i) wide[i] = t[i];
        detail::reduce_wide(wide, f, d + k - 1);
        for (int i = 0; i < 4; ++i) out[i] = wide[i];
    }
    return out;
}

}  // namespace detail

// x^k * e for 1 <= k <= 16, the projector update. Uses the per-field
// byte-reduction tables when available; tests pin this against naive_mul.
inline FieldElem mul_x_pow(const FieldElem& e, int k) {
    if (k < 1 || k > 16) throw std::invalid_argument("shift exponent out of 1..16");
    FieldElem r = e;
    r.limb = detail::stepped_limbs(*r.field, r.limb, k);
    detail::assert_reduced(r);
    return r;
}

// In-place form for the generator's hot loop; same contract as mul_x_pow.
inline void mul_x_pow_inplace(FieldElem& e, int k) {
    if (k < 1 || k > 16) throw std::invalid_argument("shift exponent out of 1..16");
    e.limb = detail::stepped_limbs(*e.field, e.limb, k);
    detail::assert_reduced(e);
}

// Schoolbook multiply then long division. Deliberately naive: this is the
// oracle the shifted fast path is checked against.
inline FieldElem naive_mul(const FieldElem& a, const FieldElem& b) {
    if (a.field != b.field) throw std::logic_error("field mismatch");
    const FieldSpec& f = *a.field;
    std::array<uint64_t, 9> acc{};
    for (int j = 0; j < f.degree(); ++j)
        if (b.bit(j)) detail::xor_elem_into(acc, a.limb, j);
    detail::reduce_wide(acc, f, 2 * (f.degree() - 1));
    FieldElem r(f);
    for (int i = 0; i < 4; ++i) r.limb[i] = acc[i];
    detail::assert_reduced(r);
    return r;
}

// Square-and-multiply on top of naive_mul; exponents are arbitrary-precision.
inline FieldElem pow(const FieldElem& e, const BigUint& n) {
    FieldElem result = one_elem(*e.field);
    if (n == 0) return result;
    FieldElem base = e;
    const unsigned top = boost::multiprecision::msb(n);
    for (unsigned i = 0; i <= top; ++i) {
        if (boost::multiprecision::bit_test(n, i)) result = naive_mul(result, base);
        base = naive_mul(base, base);
    }
    return result;
}

inline std::vector<uint8_t> elem_to_bytes(const FieldElem& e) {
    std::vector<uint8_t> out(e.field->byte_length());
    for (size_t i = 0; i < out.size(); ++i) out[i] = e.byte(i);
    return out;
}

inline FieldElem bytes_to_elem(std::span<const uint8_t> bytes, const FieldSpec& f) {
    if (bytes.size() != f.byte_length())
        throw std::invalid_argument("byte length does not match field degree");
    FieldElem e(f);
    for (size_t i = 0; i < bytes.size(); ++i)
        e.limb[i / 8] |= uint64_t(bytes[i]) << (8 * (i % 8));
    for (int i = f.degree(); i < 256; ++i)
        if (e.bit(i)) throw std::invalid_argument("set bits at or above field degree");
    return e;
}

// ---- order and primitivity checks ----

class BadFactorization : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// prime -> multiplicity claims for a group order 2^degree - 1
using Factorization = std::vector<std::pair<BigUint, int>>;

namespace detail {

inline void validate_factorization(const Factorization& factors, const BigUint& target) {
    BigUint prod = 1;
    for (const auto& [q, mult] : factors) {
        if (q < 2 || mult < 1) throw BadFactorization("nonsense factor entry");
        for (int i = 0; i < mult; ++i) prod *= q;
    }
    if (prod != target) throw BadFactorization("claimed primes do not multiply to 2^degree - 1");
    std::mt19937_64 gen(0x5eedf00dULL);
    for (const auto& [q, mult] : factors) {
        (void)mult;
        if (!boost::multiprecision::miller_rabin_test(q, 32, gen))
            throw BadFactorization("claimed factor fails primality test");
    }
}

}  // namespace detail

// True iff x generates the full multiplicative group, checked against a
// validated factorization of 2^degree - 1. A bogus factorization throws
// BadFactorization; a genuine non-generator returns false.
inline bool verify_primitive(const FieldSpec& spec, const Factorization& factors) {
    const BigUint group = (BigUint(1) << spec.degree()) - 1;
    detail::validate_factorization(factors, group);
    const FieldElem x = x_elem(spec);
    const FieldElem one = one_elem(spec);
    if (!(pow(x, group) == one)) return false;
    for (const auto& [q, mult] : factors) {
        (void)mult;
        if (pow(x, group / q) == one) return false;
    }
    return true;
}

// Exact multiplicative order of x, from a validated factorization.
inline BigUint multiplicative_order_of_x(const FieldSpec& spec, const Factorization& factors) {
    const BigUint group = (BigUint(1) << spec.degree()) - 1;
    detail::validate_factorization(factors, group);
    const FieldElem x = x_elem(spec);
    const FieldElem one = one_elem(spec);
    if (!(pow(x, group) == one))
        throw std::logic_error("x^(2^degree-1) != 1; modulus is not irreducible");
    BigUint order = group;
    for (const auto& [q, mult] : factors)
        for (int i = 0; i < mult; ++i) {
            if (order % q != 0) break;
            if (pow(x, order / q) == one) order /= q;
        }
    return order;
}

// Trial division by every polynomial of degree 1..degree/2. Only sensible for
// small degrees; the cipher needs it for the degree-8 S-box field.
inline bool is_irreducible_by_trial_division(const FieldSpec& spec) {
    const int d = spec.degree();
    if (d > 24) throw std::invalid_argument("trial division limited to small degrees");
    const uint64_t poly = spec.modulus()[0];
    for (int dd = 1; dd <= d / 2; ++dd) {
        for (uint64_t q = uint64_t(1) << dd; q < (uint64_t(1) << (dd + 1)); ++q) {
            uint64_t rem = poly;
            while (rem != 0 && (63 - std::countl_zero(rem)) >= dd)
                rem ^= q << ((63 - std::countl_zero(rem)) - dd);
            if (rem == 0) return false;
        }
    }
    return true;
}

// ---- the cipher's fields ----

struct NamedPoly {
    const char* name;
    PolyProductForm form;
    bool primitive_claimed;
};

inline const std::vector<NamedPoly>& standard_polynomials() {
    static const std::vector<NamedPoly> polys = {
        {"p", {-1, {8, 6, 5, 1, 0}, {}}, false},
        {"p1", {127, {89, 41, 0}, {3, 0}}, true},
        {"p2", {126, {83, 35, 0}, {7, 0}}, true},
        {"p3", {128, {96, 67, 32, 0}, {3, 0}}, true},
        {"p4", {128, {96, 64, 37, 0}, {7, 5, 0}}, true},
        {"p_hat", {256, {224, 192, 161, 128, 96, 67, 32, 0}, {6, 0}}, true},
    };
    return polys;
}

namespace detail {
inline const FieldSpec& standard_field(size_t idx) {
    static const std::array<FieldSpec, 6> fields{
        FieldSpec(expand_polynomial(standard_polynomials()[0].form), false),
        FieldSpec(expand_polynomial(standard_polynomials()[1].form), true),
        FieldSpec(expand_polynomial(standard_polynomials()[2].form), true),
        FieldSpec(expand_polynomial(standard_polynomials()[3].form), true),
        FieldSpec(expand_polynomial(standard_polynomials()[4].form), true),
        FieldSpec(expand_polynomial(standard_polynomials()[5].form), true),
    };
    return fields[idx];
}
}  // namespace detail

// K: GF(2^8), the S-box field (irreducible; x is not claimed primitive here)
inline const FieldSpec& field_k() { return detail::standard_field(0); }
// E1, E2: the controller fields (degrees 127 and 126)
inline const FieldSpec& field_e1() { return detail::standard_field(1); }
inline const FieldSpec& field_e2() { return detail::standard_field(2); }
// E3, E4: the combiner fields (degree 128)
inline const FieldSpec& field_e3() { return detail::standard_field(3); }
inline const FieldSpec& field_e4() { return detail::standard_field(4); }
// degree-256 field for the wide-projector variant
inline const FieldSpec& field_big() { return detail::standard_field(5); }

// Known factorizations of the group orders 2^d - 1 used by the cipher.
// verify_primitive re-validates these (product and primality) before use.
inline const Factorization& factors_2pow_minus1(int degree) {
    static const Factorization f126 = {
        {3, 3},      {7, 2},      {19, 1},    {43, 1},     {73, 1},  {127, 1},
        {337, 1},    {5419, 1},   {92737, 1}, {649657, 1}, {BigUint("77158673929"), 1}};
    static const Factorization f127 = {{(BigUint(1) << 127) - 1, 1}};
    static const Factorization f128 = {
        {3, 1},      {5, 1},      {17, 1},     {257, 1},   {641, 1}, {65537, 1},
        {274177, 1}, {6700417, 1}, {BigUint("67280421310721"), 1}};
    static const Factorization f256 = [] {
        Factorization f = f128;
        f.push_back({BigUint("59649589127497217"), 1});
        f.push_back({BigUint("5704689200685129054721"), 1});
        return f;
    }();
    switch (degree) {
        case 126: return f126;
        case 127: return f127;
        case 128: return f128;
        case 256: return f256;
        default: throw std::invalid_argument("no stored factorization for this degree");
    }
}

}  // namespace dicing::gf2x

#endif  // DICING_GF2X_HPP
