/**
 * @file config.hpp
 * @brief JSON forms of latency models, scenarios and service settings
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vrevoke/harness.hpp"
#include "vrevoke/tangle.hpp"

#include <json.hpp>

#include <filesystem>

namespace vrevoke {

/// {"kind": "zero"} | {"kind": "constant", "ms": 10} | {"kind": "uniform", "lo_ms": 5, "hi_ms": 15}
/// | {"kind": "lognormal", "mu": .., "sigma": .., "cap_ms": ..}
/// | {"kind": "lognormal", "mean_ms": 8000, "p95_ms": 18570, "cap_ms": 82960}
LatencyModel latency_from_json(const nlohmann::json& j);
nlohmann::json latency_to_json(const LatencyModel& model);

/// Missing keys keep their defaults; unknown keys are rejected. Throws ConfigInvalid.
ScenarioConfig scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const ScenarioConfig& config);

/// Parses a JSON file; throws ConfigInvalid on I/O or syntax errors.
nlohmann::json load_json_file(const std::filesystem::path& path);

}  // namespace vrevoke
