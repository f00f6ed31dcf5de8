/**
 * @file cli_test.cpp
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace vrevoke {
namespace {

namespace fs = std::filesystem;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli_run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    for (std::string p; std::getline(in, p, sep);) parts.push_back(p);
    return parts;
}

class CliTest : public ::testing::Test {
protected:
    fs::path dir;
    std::string store;

    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("vrevoke-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
        store = (dir / "store.journal").string();
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string slurp(const fs::path& p) {
        std::ifstream in(p);
        return std::string(std::istreambuf_iterator<char>(in), {});
    }
};

TEST_F(CliTest, RevokeStatusResolve) {
    auto boot = run({"--store", store, "bootstrap"});
    ASSERT_EQ(boot.code, 0) << boot.err;
    EXPECT_EQ(split(boot.out, '\n').size(), 5u);

    auto issued = run({"--store", store, "issue", "VIN-9"});
    ASSERT_EQ(issued.code, 0) << issued.err;
    auto fields = split(split(issued.out, '\n')[0], '\t');
    ASSERT_EQ(fields.size(), 3u);
    const auto& stc = fields[2];

    EXPECT_EQ(run({"--store", store, "status", stc}).out, "valid\n");
    auto rev = run({"--store", store, "revoke", stc});
    ASSERT_EQ(rev.code, 0) << rev.err;
    EXPECT_EQ(rev.out.rfind("revoked\t", 0), 0u);
    EXPECT_EQ(run({"--store", store, "status", stc}).out, "revoked\n");
    EXPECT_EQ(run({"--store", store, "resolve", stc}).out, "VIN-9\n");
    EXPECT_EQ(run({"--store", store, "revoke", stc}).out, "already-reported\n");

    auto banned = run({"--store", store, "issue", "VIN-9"});
    EXPECT_NE(banned.code, 0);
    EXPECT_NE(banned.err.find("BannedSubject"), std::string::npos);
}

TEST_F(CliTest, BadInputsFail) {
    EXPECT_NE(run({}).code, 0);
    EXPECT_NE(run({"frobnicate"}).code, 0);
    EXPECT_NE(run({"--store", store, "status", "xyz"}).code, 0);
    EXPECT_NE(run({"--store", store, "resolve", "0011223344556677"}).code, 0);
    EXPECT_NE(run({"bench-check", "--freq", "0"}).code, 0);
    EXPECT_NE(run({"--config", (dir / "missing.json").string(), "bench-check"}).code, 0);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, BenchCheckIsReproducible) {
    auto a = dir / "a.csv";
    auto b = dir / "b.csv";
    std::vector<std::string> common{"--revoked", "10,20", "--freq", "1,10", "--duration", "5", "--seed", "3"};
    auto args_a = common;
    args_a.insert(args_a.end(), {"--out", a.string(), "bench-check"});
    auto args_b = common;
    args_b.insert(args_b.end(), {"--out", b.string(), "--dump-dir", (dir / "dump").string(), "bench-check"});
    ASSERT_EQ(run(args_a).code, 0);
    ASSERT_EQ(run(args_b).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(split(slurp(a), '\n').size(), 5u);
    EXPECT_TRUE(fs::exists(dir / "dump" / "samples.csv"));
    EXPECT_TRUE(fs::exists(dir / "dump" / "cdf.csv"));
}

TEST_F(CliTest, NineCellSweep) {
    auto m = dir / "m.csv";
    auto r = run({"bench-check", "--revoked", "500,5000,10000", "--freq", "1,2,10", "--seed", "7", "--out", m.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto lines = split(slurp(m), '\n');
    ASSERT_EQ(lines.size(), 10u);
    EXPECT_EQ(lines[0], "kind,revoked_count,frequency_hz,mean_ms,max_ms,p95_ms,n");
    EXPECT_EQ(lines[1].rfind("check,500,1,", 0), 0u);
    EXPECT_EQ(lines[9].rfind("check,10000,10,", 0), 0u);
}

TEST_F(CliTest, ConfigFileSections) {
    auto cfg = dir / "cfg.json";
    std::ofstream(cfg) << R"({"scenario": {"revoked_counts": [10], "frequencies_hz": [2], "duration_s": 5,
                               "check_latency": {"kind": "constant", "ms": 4}},
                              "service": {"store_path": ")"
                       << (dir / "cfg.journal").string() << R"("}})";
    auto r = run({"--config", cfg.string(), "bench-check"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "kind,revoked_count,frequency_hz,mean_ms,max_ms,p95_ms,n\n"
                     "check,10,2,4.000000,4.000000,4.000000,10\n");
    ASSERT_EQ(run({"--config", cfg.string(), "bootstrap"}).code, 0);
    EXPECT_TRUE(fs::exists(dir / "cfg.journal"));
}

TEST_F(CliTest, BenchWindowAndCrl) {
    auto w = run({"--revoked", "5", "bench-window", "--revocations", "20"});
    ASSERT_EQ(w.code, 0) << w.err;
    EXPECT_EQ(split(w.out, '\n')[1].rfind("window,20,0,", 0), 0u);
    auto c = run({"--revoked", "10", "--freq", "1", "--duration", "20", "bench-crl"});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_NE(c.out.find("\ncrl,10,1,"), std::string::npos);
    EXPECT_NE(c.out.find("\ncrl_miss,10,1,"), std::string::npos);
}

}  // namespace
}  // namespace vrevoke
