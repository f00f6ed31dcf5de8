/**
 * @file stats_test.cpp
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vrevoke/error.hpp"
#include "vrevoke/random.hpp"
#include "vrevoke/stats.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vrevoke {
namespace {

TEST(Percentile, NearestRank) {
    std::vector<double> xs(100);
    std::iota(xs.begin(), xs.end(), 1.0);
    EXPECT_EQ(percentile(xs, 0.95), 95.0);
    EXPECT_EQ(percentile(xs, 1.0), 100.0);
    EXPECT_EQ(percentile(xs, 0.01), 1.0);
    EXPECT_EQ(percentile(std::vector<double>{5, 1, 3}, 1.0), 5.0);
    EXPECT_EQ(percentile(std::vector<double>{5, 1, 3}, 0.5), 3.0);
    EXPECT_EQ(percentile(std::vector<double>{7}, 0.95), 7.0);
}

TEST(Percentile, Errors) {
    try {
        percentile(std::vector<double>{}, 0.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptySamples);
    }
    EXPECT_THROW(percentile(std::vector<double>{1}, 0.0), Error);
    EXPECT_THROW(percentile(std::vector<double>{1}, 1.5), Error);
    EXPECT_THROW(summarize(std::vector<double>{}), Error);
}

TEST(Summary, Fields) {
    std::vector<double> xs{4, 1, 3, 2};
    auto s = summarize(xs);
    EXPECT_DOUBLE_EQ(s.mean_ms, 2.5);
    EXPECT_EQ(s.max_ms, 4.0);
    EXPECT_EQ(s.p95_ms, 4.0);
    EXPECT_EQ(s.n, 4u);
}

TEST(Cdf, StepsOnDistinctValues) {
    auto cdf = emit_cdf(std::vector<double>{2, 2, 4});
    ASSERT_EQ(cdf.size(), 2u);
    EXPECT_EQ(cdf[0].value, 2.0);
    EXPECT_NEAR(cdf[0].probability, 2.0 / 3.0, 1e-12);
    EXPECT_EQ(cdf[1], (CdfPoint{4.0, 1.0}));
}

TEST(Cdf, Singleton) {
    auto cdf = emit_cdf(std::vector<double>{7});
    ASSERT_EQ(cdf.size(), 1u);
    EXPECT_EQ(cdf[0], (CdfPoint{7.0, 1.0}));
}

TEST(Cdf, UniformSamplesWithinKolmogorovDistance) {
    Rng rng(1000);
    std::vector<double> xs;
    for (int i = 0; i < 1000; ++i) xs.push_back(rng.uniform01());
    auto cdf = emit_cdf(xs);
    // one-sided gaps on both sides of every step
    double ks = 0.0, prev = 0.0;
    for (const auto& p : cdf) {
        ks = std::max({ks, std::abs(p.probability - p.value), std::abs(p.value - prev)});
        prev = p.probability;
    }
    EXPECT_LT(ks, 0.05);
}

TEST(Cdf, MonotoneAndMatchesExponentialLaw) {
    Rng rng(5);
    std::vector<double> xs;
    for (int i = 0; i < 5000; ++i) xs.push_back(-std::log(1.0 - rng.uniform01()) * 10.0);
    auto cdf = emit_cdf(xs);
    double ks = 0.0;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        if (i > 0) {
            EXPECT_GT(cdf[i].value, cdf[i - 1].value);
            EXPECT_GT(cdf[i].probability, cdf[i - 1].probability);
        }
        ks = std::max(ks, std::abs(cdf[i].probability - (1.0 - std::exp(-cdf[i].value / 10.0))));
    }
    EXPECT_EQ(cdf.back().probability, 1.0);
    EXPECT_LT(ks, 0.05);
}

TEST(Rng, Reproducible) {
    Rng a(9), b(9);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
    Rng c(1);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_LT(c.below(7), 7u);
        double u = c.uniform01();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
    EXPECT_NE(mix_seed(1, 2), mix_seed(1, 3));
    EXPECT_NE(mix_seed(1, 2), mix_seed(2, 2));
}

TEST(Rng, NormalMoments) {
    Rng rng(2);
    double sum = 0, sq = 0;
    const int n = 50'000;
    for (int i = 0; i < n; ++i) {
        double x = rng.normal();
        sum += x;
        sq += x * x;
    }
    EXPECT_NEAR(sum / n, 0.0, 0.02);
    EXPECT_NEAR(sq / n, 1.0, 0.03);
}

}  // namespace
}  // namespace vrevoke
