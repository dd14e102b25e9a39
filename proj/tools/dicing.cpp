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

// Command-line front end: keystream generation, file encryption, the
// self-test battery, a throughput benchmark and a constants dump.
//
// Exit codes: 0 success, 1 usage error, 2 self-test failure, 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bench_entry.hpp"
#include "dicing/dicing.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSelftest = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<uint8_t> parse_key(const std::string& hex) {
    std::vector<uint8_t> key;
    try {
        key = dicing::from_hex(hex);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("bad --key: ") + e.what());
    }
    if (key.size() != 16 && key.size() != 32)
        throw UsageError("--key must be 16 or 32 bytes (32 or 64 hex digits)");
    return key;
}

std::array<uint8_t, 32> parse_iv(const std::string& hex) {
    std::vector<uint8_t> iv;
    try {
        iv = dicing::from_hex(hex);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("bad --iv: ") + e.what());
    }
    if (iv.size() > 32) throw UsageError("--iv must be at most 32 bytes (64 hex digits)");
    return dicing::pad_iv(iv);
}

dicing::VariantMode parse_mode(const std::string& name) {
    const auto m = dicing::variant_from_name(name);
    if (!m) throw UsageError("unknown --mode '" + name + "' (standard, r1, r2, r3, big)");
    return *m;
}

dicing::EngineState make_engine(const std::string& key_hex, const std::string& iv_hex,
                                const std::string& mode_name) {
    const std::vector<uint8_t> key = parse_key(key_hex);
    const std::array<uint8_t, 32> iv = parse_iv(iv_hex);
    const dicing::VariantMode mode = parse_mode(mode_name);
    const dicing::KeyMaterial km = dicing::build_key_material(key);
    return dicing::make_state(km, dicing::ivsetup(km, iv), mode);
}

// Writes through a temporary in the same directory and renames into place,
// so a failed run never leaves a partial output file.
void write_file_atomic(const std::string& path, std::span<const uint8_t> data) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size()));
        if (!out) throw IoError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) throw IoError("cannot rename '" + tmp.string() + "' to '" + target.string() + "'");
}

std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed for '" + path + "'");
    return data;
}

int cmd_keystream(const std::string& key_hex, const std::string& iv_hex, uint64_t len,
                  const std::string& mode_name, bool raw, const std::string& out_path) {
    dicing::EngineState st = make_engine(key_hex, iv_hex, mode_name);
    std::vector<uint8_t> z(len);
    dicing::keystream(st, z);
    if (!out_path.empty()) {
        if (raw) {
            write_file_atomic(out_path, z);
        } else {
            const std::string hex = dicing::to_hex(z) + "\n";
            write_file_atomic(out_path,
                              std::span(reinterpret_cast<const uint8_t*>(hex.data()), hex.size()));
        }
    } else if (raw) {
        std::fwrite(z.data(), 1, z.size(), stdout);
    } else {
        std::puts(dicing::to_hex(z).c_str());
    }
    return kExitOk;
}

int cmd_crypt(const std::string& key_hex, const std::string& iv_hex,
              const std::string& mode_name, const std::string& in_path,
              const std::string& out_path) {
    dicing::EngineState st = make_engine(key_hex, iv_hex, mode_name);
    const std::vector<uint8_t> input = read_file(in_path);
    std::vector<uint8_t> output(input.size());
    dicing::crypt(st, input, output);
    write_file_atomic(out_path, output);
    return kExitOk;
}

int cmd_selftest(bool full) {
    const std::vector<dicing::verify::CheckResult> results = dicing::verify::run_selftest(!full);
    bool all = true;
    for (const auto& r : results) {
        std::printf("%-24s %s%s%s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                    r.detail.empty() ? "" : "  - ", r.detail.c_str());
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "self-test passed" : "self-test FAILED");
    return all ? kExitOk : kExitSelftest;
}

int cmd_bench(double mb) {
    if (mb <= 0) throw UsageError("--mb must be positive");
    const dicing::bench::BenchReport r = dicing::bench::run_hot_bench(mb);
    std::printf("keysetup        %10.2f us\n", r.keysetup_us);
    std::printf("ivsetup         %10.2f us\n", r.ivsetup_us);
    std::printf("keystream       %10.2f MB/s\n", r.mb_per_second);
    if (r.est_ghz > 0.0) {
        std::printf("clock estimate  %10.2f GHz\n", r.est_ghz);
        std::printf("cycles/byte     %10.2f\n", r.est_cycles_per_byte);
    } else {
        std::printf("cycles/byte     unavailable (no TSC)\n");
    }
    return kExitOk;
}

int cmd_constants() {
    std::printf("field moduli (exponents of nonzero terms):\n");
    for (const auto& np : dicing::gf2x::standard_polynomials()) {
        const dicing::gf2x::FieldSpec spec(dicing::gf2x::expand_polynomial(np.form),
                                           np.primitive_claimed);
        std::printf("  %-6s degree %-3d  ", np.name, spec.degree());
        for (size_t i = 0; i < spec.exponents().size(); ++i)
            std::printf("%s%d", i ? " " : "", spec.exponents()[i]);
        std::printf("%s\n", np.primitive_claimed ? "  (primitive)" : "  (irreducible)");
    }
    std::printf("c = floor(e * 57!), little-endian:\n  %s\n",
                dicing::to_hex(dicing::constant_c()).c_str());
    std::printf("S0 fixed values: S0(0x02) = 0x%02x, S0(0x03) = 0x%02x\n",
                dicing::sbox0()[2], dicing::sbox0()[3]);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DICING stream cipher tool"};
    app.require_subcommand(1);

    std::string key_hex, iv_hex, mode_name = "standard", in_path, out_path;
    uint64_t len = 0;
    bool raw = false, full = false;
    double mb = 64.0;

    auto* ks = app.add_subcommand("keystream", "generate keystream bytes");
    ks->add_option("--key", key_hex, "key, hex (16 or 32 bytes)")->required();
    ks->add_option("--iv", iv_hex, "IV, hex (up to 32 bytes, zero-padded)")->required();
    ks->add_option("--len", len, "number of bytes")->required();
    ks->add_option("--mode", mode_name, "standard|r1|r2|r3|big");
    ks->add_flag("--raw", raw, "emit raw bytes instead of hex");
    ks->add_option("--out", out_path, "write to file instead of stdout");

    auto* enc = app.add_subcommand("encrypt", "encrypt a file");
    enc->add_option("--key", key_hex, "key, hex (16 or 32 bytes)")->required();
    enc->add_option("--iv", iv_hex, "IV, hex (up to 32 bytes, zero-padded)")->required();
    enc->add_option("--in", in_path, "input file")->required();
    enc->add_option("--out", out_path, "output file")->required();
    enc->add_option("--mode", mode_name, "standard|r1|r2|r3|big");

    auto* dec = app.add_subcommand("decrypt", "decrypt a file (same as encrypt)");
    dec->add_option("--key", key_hex, "key, hex (16 or 32 bytes)")->required();
    dec->add_option("--iv", iv_hex, "IV, hex (up to 32 bytes, zero-padded)")->required();
    dec->add_option("--in", in_path, "input file")->required();
    dec->add_option("--out", out_path, "output file")->required();
    dec->add_option("--mode", mode_name, "standard|r1|r2|r3|big");

    auto* self = app.add_subcommand("selftest", "run the built-in checks");
    self->add_flag("--full", full, "include the long-running experiments");

    auto* bench = app.add_subcommand("bench", "measure throughput");
    bench->add_option("--mb", mb, "megabytes of keystream to time (default 64)");

    app.add_subcommand("constants", "print field moduli and derived constants");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (ks->parsed()) return cmd_keystream(key_hex, iv_hex, len, mode_name, raw, out_path);
        if (enc->parsed() || dec->parsed())
            return cmd_crypt(key_hex, iv_hex, mode_name, in_path, out_path);
        if (self->parsed()) return cmd_selftest(full);
        if (bench->parsed()) return cmd_bench(mb);
        return cmd_constants();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
