/**
 * @file stats.cpp
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vrevoke/stats.hpp"

#include "vrevoke/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vrevoke {

namespace {

std::vector<double> sorted_copy(std::span<const double> samples) {
    if (samples.empty()) throw Error(ErrorCode::EmptySamples, "no samples");
    std::vector<double> v(samples.begin(), samples.end());
    std::sort(v.begin(), v.end());
    return v;
}

double nearest_rank(const std::vector<double>& sorted, double p) {
    if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, "percentile rank must be in (0, 1]");
    // The epsilon keeps 0.95 * 100 from rounding up to rank 96.
    auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(sorted.size()) - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

}  // namespace

double percentile(std::span<const double> samples, double p) { return nearest_rank(sorted_copy(samples), p); }

DelayStats summarize(std::span<const double> samples) {
    auto sorted = sorted_copy(samples);
    DelayStats s;
    s.n = sorted.size();
    s.mean_ms = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.n);
    s.max_ms = sorted.back();
    s.p95_ms = nearest_rank(sorted, 0.95);
    return s;
}

std::vector<CdfPoint> emit_cdf(std::span<const double> samples) {
    auto sorted = sorted_copy(samples);
    std::vector<CdfPoint> out;
    const auto n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
        out.push_back({sorted[i], static_cast<double>(i + 1) / n});
    }
    out.back().probability = 1.0;
    return out;
}

}  // namespace vrevoke
