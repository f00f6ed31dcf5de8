/**
 * @file config.cpp
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vrevoke/config.hpp"

#include "vrevoke/error.hpp"

#include <fmt/format.h>

#include <fstream>
#include <set>

namespace vrevoke {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& why) { throw Error(ErrorCode::ConfigInvalid, why); }

void reject_unknown(const json& j, const std::set<std::string>& allowed, std::string_view where) {
    if (!j.is_object()) invalid(fmt::format("{} must be an object", where));
    for (const auto& [key, value] : j.items()) {
        if (!allowed.contains(key)) invalid(fmt::format("unknown key '{}' in {}", key, where));
    }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        invalid(fmt::format("bad value for '{}': {}", key, e.what()));
    }
}

}  // namespace

LatencyModel latency_from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "zero") return LatencyModel::zero();
    reject_unknown(j, {"kind", "ms", "lo_ms", "hi_ms", "mu", "sigma", "cap_ms", "mean_ms", "p95_ms"}, "latency model");
    std::string kind;
    read(j, "kind", kind);
    try {
        if (kind == "zero") return LatencyModel::zero();
        if (kind == "constant") return LatencyModel::constant(j.at("ms").get<double>());
        if (kind == "uniform") return LatencyModel::uniform(j.at("lo_ms").get<double>(), j.at("hi_ms").get<double>());
        if (kind == "lognormal") {
            double cap = j.value("cap_ms", 82960.0);
            if (j.contains("mean_ms")) {
                return LatencyModel::fit_lognormal(j.at("mean_ms").get<double>(), j.at("p95_ms").get<double>(), cap);
            }
            return LatencyModel::lognormal(j.at("mu").get<double>(), j.at("sigma").get<double>(), cap);
        }
    } catch (const json::exception& e) {
        invalid(fmt::format("latency model '{}': {}", kind, e.what()));
    } catch (const Error& e) {
        invalid(e.what());
    }
    invalid(fmt::format("unknown latency model kind '{}'", kind));
}

json latency_to_json(const LatencyModel& m) {
    switch (m.kind) {
        case LatencyModel::Kind::Zero: return {{"kind", "zero"}};
        case LatencyModel::Kind::Constant: return {{"kind", "constant"}, {"ms", m.constant_ms}};
        case LatencyModel::Kind::Uniform: return {{"kind", "uniform"}, {"lo_ms", m.lo_ms}, {"hi_ms", m.hi_ms}};
        case LatencyModel::Kind::LogNormal:
            return {{"kind", "lognormal"}, {"mu", m.mu}, {"sigma", m.sigma}, {"cap_ms", m.cap_ms}};
    }
    return {};
}

ScenarioConfig scenario_from_json(const json& j) {
    reject_unknown(j,
                   {"n_certificates", "revoked_fraction", "revoked_counts", "frequencies_hz", "duration_s",
                    "check_latency", "publish_latency", "work", "seed", "start_time_ms"},
                   "scenario");
    ScenarioConfig c;
    read(j, "n_certificates", c.n_certificates);
    read(j, "revoked_fraction", c.revoked_fraction);
    read(j, "revoked_counts", c.revoked_counts);
    read(j, "frequencies_hz", c.frequencies_hz);
    read(j, "duration_s", c.duration_s);
    read(j, "seed", c.seed);
    read(j, "start_time_ms", c.start_time_ms);
    if (j.contains("check_latency")) c.check_latency = latency_from_json(j.at("check_latency"));
    if (j.contains("publish_latency")) c.publish_latency = latency_from_json(j.at("publish_latency"));
    if (j.contains("work")) {
        const auto& w = j.at("work");
        reject_unknown(w, {"hash_ms", "verify_ms", "crl_entry_ms"}, "work");
        read(w, "hash_ms", c.work.hash_ms);
        read(w, "verify_ms", c.work.verify_ms);
        read(w, "crl_entry_ms", c.work.crl_entry_ms);
    }
    c.validate();
    return c;
}

json scenario_to_json(const ScenarioConfig& c) {
    return {{"n_certificates", c.n_certificates},
            {"revoked_fraction", c.revoked_fraction},
            {"revoked_counts", c.revoked_counts},
            {"frequencies_hz", c.frequencies_hz},
            {"duration_s", c.duration_s},
            {"check_latency", latency_to_json(c.check_latency)},
            {"publish_latency", latency_to_json(c.publish_latency)},
            {"work", {{"hash_ms", c.work.hash_ms}, {"verify_ms", c.work.verify_ms}, {"crl_entry_ms", c.work.crl_entry_ms}}},
            {"seed", c.seed},
            {"start_time_ms", c.start_time_ms}};
}

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) invalid(fmt::format("cannot open config file {}", path.string()));
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        invalid(fmt::format("{}: {}", path.string(), e.what()));
    }
}

}  // namespace vrevoke
