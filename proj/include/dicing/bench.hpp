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

#ifndef DICING_BENCH_HPP
#define DICING_BENCH_HPP

#include <chrono>
#include <cstdint>
#include <vector>

#if defined(__x86_64__) || defined(_M_X64)
#include <x86intrin.h>
#define DICING_HAVE_RDTSC 1
#endif

#include "dicing/engine.hpp"

namespace dicing::bench {

struct BenchReport {
    double keysetup_us = 0.0;        // mean microseconds per keysetup
    double ivsetup_us = 0.0;         // mean microseconds per ivsetup
    double mb_per_second = 0.0;      // keystream throughput, 10^6 bytes = 1 MB
    double est_ghz = 0.0;            // 0 when the TSC is unavailable
    double est_cycles_per_byte = 0.0;
};

// TSC frequency from a ~50 ms wall-clock sample. On non-x86 builds this
// returns 0 and the cycles/byte estimate is skipped.
inline double estimate_cpu_ghz() {
#ifdef DICING_HAVE_RDTSC
    const auto t0 = std::chrono::steady_clock::now();
    const uint64_t c0 = __rdtsc();
    while (std::chrono::steady_clock::now() - t0 < std::chrono::milliseconds(50)) {}
    const auto t1 = std::chrono::steady_clock::now();
    const uint64_t c1 = __rdtsc();
    const double secs = std::chrono::duration<double>(t1 - t0).count();
    return double(c1 - c0) / secs / 1e9;
#else
    return 0.0;
#endif
}

inline BenchReport measure(double megabytes) {
    BenchReport r;
    std::vector<uint8_t> key(32);
    std::array<uint8_t, 32> iv{};
    for (int i = 0; i < 32; ++i) { key[size_t(i)] = uint8_t(i); iv[size_t(i)] = uint8_t(32 + i); }

    using clk = std::chrono::steady_clock;
    {
        constexpr int reps = 200;
        volatile uint8_t sink = 0;
        const auto t0 = clk::now();
        for (int i = 0; i < reps; ++i) {
            key[0] = uint8_t(i);
            const KeyMaterial km = build_key_material(key);
            sink = sink ^ km.sbox[0];
        }
        r.keysetup_us = std::chrono::duration<double, std::micro>(clk::now() - t0).count() / reps;
    }
    const KeyMaterial km = build_key_material(key);
    {
        constexpr int reps = 500;
        volatile uint8_t sink = 0;
        const auto t0 = clk::now();
        for (int i = 0; i < reps; ++i) {
            iv[0] = uint8_t(i);
            const InitializedState st = ivsetup(km, iv);
            sink = sink ^ st.eta[0];
        }
        r.ivsetup_us = std::chrono::duration<double, std::micro>(clk::now() - t0).count() / reps;
    }
    {
        EngineState st = make_state(km, ivsetup(km, iv), VariantMode::kStandard);
        std::vector<uint8_t> buf(1 << 16);
        const uint64_t total = uint64_t(megabytes * 1e6);
        // warm-up pass so tables and state are hot
        keystream(st, buf);
        uint64_t produced = 0;
        const double ghz = estimate_cpu_ghz();
        const auto t0 = clk::now();
        while (produced < total) {
            keystream(st, buf);
            produced += buf.size();
        }
        const double secs = std::chrono::duration<double>(clk::now() - t0).count();
        r.mb_per_second = double(produced) / 1e6 / secs;
        r.est_ghz = ghz;
        if (ghz > 0.0) r.est_cycles_per_byte = secs * ghz * 1e9 / double(produced);
    }
    return r;
}

}  // namespace dicing::bench

#endif  // DICING_BENCH_HPP
