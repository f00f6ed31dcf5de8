/**
 * @file stats.hpp
 * @brief Delay summaries: nearest-rank percentiles and empirical CDFs
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vrevoke {

/// Nearest rank: the element at 1-based index ceil(p*n) of the sorted samples.
/// Throws EmptySamples for no samples, InvalidArgument unless 0 < p <= 1.
double percentile(std::span<const double> samples, double p);

struct DelayStats {
    double mean_ms = 0.0;
    double max_ms = 0.0;
    double p95_ms = 0.0;
    std::size_t n = 0;
};

/// Throws EmptySamples.
DelayStats summarize(std::span<const double> samples);

struct CdfPoint {
    double value;
    double probability;

    friend bool operator==(const CdfPoint&, const CdfPoint&) = default;
};

/// Sorted distinct values with P(X <= value); the last probability is exactly 1.
std::vector<CdfPoint> emit_cdf(std::span<const double> samples);

}  // namespace vrevoke
