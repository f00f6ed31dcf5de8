/**
 * @file harness_test.cpp
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vrevoke/config.hpp"
#include "vrevoke/error.hpp"
#include "vrevoke/harness.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace vrevoke {
namespace {

ScenarioConfig small() {
    ScenarioConfig c;
    c.revoked_counts = {20};
    c.frequencies_hz = {10};
    c.duration_s = 10;
    c.publish_latency = LatencyModel::uniform(0, 500);
    return c;
}

ErrorCode config_error(const nlohmann::json& j) {
    try {
        scenario_from_json(j);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

TEST(Scenario, Populations) {
    ScenarioConfig c;
    c.revoked_counts = {500, 5000};
    auto p = c.populations();
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p[0], (std::pair<std::size_t, std::size_t>{500, 1000}));
    EXPECT_EQ(p[1], (std::pair<std::size_t, std::size_t>{5000, 10000}));
    c.revoked_counts.clear();
    c.n_certificates = 30;
    c.revoked_fraction = 0.2;
    EXPECT_EQ(c.populations().front(), (std::pair<std::size_t, std::size_t>{6, 30}));
}

TEST(Scenario, Validation) {
    ScenarioConfig c;
    c.frequencies_hz = {0};
    EXPECT_THROW(c.validate(), Error);
    c = ScenarioConfig{};
    c.duration_s = -1;
    EXPECT_THROW(c.validate(), Error);
    c = ScenarioConfig{};
    c.revoked_fraction = 1.5;
    EXPECT_THROW(c.validate(), Error);
}

TEST(Config, JsonRoundTripAndRejections) {
    auto c = small();
    c.seed = 77;
    auto back = scenario_from_json(scenario_to_json(c));
    EXPECT_EQ(scenario_to_json(back), scenario_to_json(c));
    EXPECT_EQ(back.publish_latency, c.publish_latency);

    EXPECT_EQ(config_error({{"bogus", 1}}), ErrorCode::ConfigInvalid);
    EXPECT_EQ(config_error({{"duration_s", "long"}}), ErrorCode::ConfigInvalid);
    EXPECT_EQ(config_error({{"check_latency", {{"kind", "gamma"}}}}), ErrorCode::ConfigInvalid);
    EXPECT_EQ(config_error({{"check_latency", {{"kind", "constant"}, {"ms", -5}}}}), ErrorCode::ConfigInvalid);

    auto fitted = latency_from_json({{"kind", "lognormal"}, {"mean_ms", 8000}, {"p95_ms", 18570}, {"cap_ms", 82960}});
    EXPECT_EQ(fitted, LatencyModel::fit_lognormal(8000, 18570, 82960));
    EXPECT_EQ(latency_from_json("zero"), LatencyModel::zero());
}

TEST(Population, GroundTruthAndReadiness) {
    auto c = small();
    auto pop = Population::build(c, 20, 40, 3);
    EXPECT_EQ(pop->vehicles().size(), 40u);
    EXPECT_EQ(pop->revoked_hashes().size(), 20u);
    EXPECT_EQ(pop->crl().size(), 20u);
    std::size_t flagged = 0;
    for (const auto& v : pop->vehicles()) {
        flagged += v.revoked;
        EXPECT_EQ(pop->revoked_hashes().contains(whole_certificate_hash(v.stc)), v.revoked);
    }
    EXPECT_EQ(flagged, 20u);
    for (const auto& h : pop->revoked_hashes()) {
        EXPECT_FALSE(pop->ledger().find_transactions(derive_address(h), pop->ready_time_ms()).empty());
    }
    EXPECT_THROW(Population::build(c, 5, 4, 1), Error);
}

TEST(CheckBenchmark, NoFalseDecisionsAndOneQuery) {
    auto table = run_check_benchmark(small());
    ASSERT_EQ(table.size(), 1u);
    const auto& cell = table[0];
    EXPECT_EQ(cell.kind, "check");
    EXPECT_EQ(cell.audit.events, 100u);
    EXPECT_EQ(cell.audit.false_positives, 0u);
    EXPECT_EQ(cell.audit.false_negatives, 0u);
    EXPECT_EQ(cell.audit.min_queries_per_check, 1u);
    EXPECT_EQ(cell.audit.max_queries_per_check, 1u);
    EXPECT_GT(cell.audit.ignored_revoked, 0u);
    EXPECT_GT(cell.audit.accepted, 0u);
    EXPECT_DOUBLE_EQ(cell.stats.mean_ms, 10.0);
}

TEST(CheckBenchmark, AllRevokedAndNoneRevoked) {
    auto c = small();
    c.revoked_counts = {10};
    c.revoked_fraction = 1.0;
    auto all = run_check_benchmark(c).at(0);
    EXPECT_EQ(all.audit.ignored_revoked, all.audit.events);
    EXPECT_EQ(all.audit.false_negatives, 0u);

    c.revoked_counts.clear();
    c.n_certificates = 10;
    c.revoked_fraction = 0.0;
    auto none = run_check_benchmark(c).at(0);
    EXPECT_EQ(none.audit.accepted, none.audit.events);
    EXPECT_EQ(none.audit.false_positives, 0u);
}

TEST(CheckBenchmark, QueueingWhenServiceExceedsPeriod) {
    auto c = small();
    c.check_latency = LatencyModel::constant(150);  // period is 100 ms at 10 Hz
    auto cell = run_check_benchmark(c).at(0);
    EXPECT_DOUBLE_EQ(cell.samples.front(), 150.0);
    EXPECT_DOUBLE_EQ(cell.samples[1], 200.0);
    EXPECT_GT(cell.stats.max_ms, cell.stats.mean_ms);
}

TEST(CrlBaseline, ScanCostGrowsWithListLength) {
    auto c = small();
    c.revoked_counts = {20, 100, 200};
    c.frequencies_hz = {1};  // 200 ms scans stay under the 1000 ms period
    c.duration_s = 50;
    c.work.crl_entry_ms = 1.0;
    auto table = run_crl_baseline(c);
    std::vector<const CellResult*> misses;
    for (const auto& cell : table) {
        EXPECT_EQ(cell.audit.false_positives, 0u);
        EXPECT_EQ(cell.audit.false_negatives, 0u);
        if (cell.kind == "crl_miss") misses.push_back(&cell);
    }
    ASSERT_EQ(misses.size(), 3u);
    EXPECT_DOUBLE_EQ(misses[0]->stats.mean_ms, 20.0);
    EXPECT_DOUBLE_EQ(misses[2]->stats.mean_ms / misses[1]->stats.mean_ms, 2.0);
    EXPECT_DOUBLE_EQ(misses[2]->stats.max_ms, 200.0);
}

TEST(WindowBenchmark, ZeroAndConstantModels) {
    auto c = small();
    c.publish_latency = LatencyModel::zero();
    auto zero = run_window_benchmark(c, 50);
    EXPECT_EQ(zero.stats.mean_ms, 0.0);
    EXPECT_EQ(zero.stats.max_ms, 0.0);
    EXPECT_EQ(zero.audit.false_negatives, 0u);

    c.publish_latency = LatencyModel::constant(5000);
    auto fixed = run_window_benchmark(c, 50);
    EXPECT_EQ(fixed.stats.mean_ms, 5000.0);
    EXPECT_EQ(fixed.audit.false_positives, 0u);
    EXPECT_EQ(fixed.audit.false_negatives, 0u);
    EXPECT_THROW(run_window_benchmark(c, 0), Error);
}

TEST(Output, CsvShapeAndDeterminism) {
    auto c = small();
    std::ostringstream a, b, samples, cdf;
    auto t1 = run_check_benchmark(c);
    write_metrics_csv(a, t1);
    write_metrics_csv(b, run_check_benchmark(c));
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.str(), "kind,revoked_count,frequency_hz,mean_ms,max_ms,p95_ms,n\n"
                       "check,20,10,10.000000,10.000000,10.000000,100\n");
    write_samples_csv(samples, t1);
    write_cdf_csv(cdf, t1);
    auto sample_text = samples.str();
    EXPECT_EQ(std::count(sample_text.begin(), sample_text.end(), '\n'), 101);
    EXPECT_EQ(cdf.str(), "kind,revoked_count,frequency_hz,value_ms,cumulative_probability\n"
                         "check,20,10,10.000000,1.000000\n");
}

TEST(Output, SeedChangesSenderDraws) {
    auto c = small();
    c.check_latency = LatencyModel::uniform(5, 15);
    auto a = run_check_benchmark(c).at(0).samples;
    c.seed = 2;
    auto b = run_check_benchmark(c).at(0).samples;
    EXPECT_NE(a, b);
}

}  // namespace
}  // namespace vrevoke
