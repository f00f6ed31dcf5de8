/**
 * @file vrevoke_py.cpp
 * @brief Python bindings: encodings, hashes, statistics, benchmarks and the service
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vrevoke/config.hpp"
#include "vrevoke/error.hpp"
#include "vrevoke/harness.hpp"
#include "vrevoke/service.hpp"
#include "vrevoke/stats.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace vrevoke;

namespace {

Bytes as_bytes(const py::bytes& b) {
    std::string s = b;
    return Bytes(s.begin(), s.end());
}

py::bytes to_py(const Bytes& b) { return py::bytes(reinterpret_cast<const char*>(b.data()), b.size()); }

py::dict cell_dict(const CellResult& c) {
    py::dict d;
    d["kind"] = c.kind;
    d["revoked_count"] = c.revoked_count;
    d["frequency_hz"] = c.frequency_hz;
    d["mean_ms"] = c.stats.mean_ms;
    d["max_ms"] = c.stats.max_ms;
    d["p95_ms"] = c.stats.p95_ms;
    d["n"] = c.stats.n;
    d["samples"] = c.samples;
    d["false_positives"] = c.audit.false_positives;
    d["false_negatives"] = c.audit.false_negatives;
    d["max_queries_per_check"] = c.audit.max_queries_per_check;
    return d;
}

py::list table_list(const BenchmarkTable& t) {
    py::list out;
    for (const auto& c : t) out.append(cell_dict(c));
    return out;
}

ScenarioConfig scenario(const std::string& json_text) {
    return scenario_from_json(json_text.empty() ? nlohmann::json::object() : nlohmann::json::parse(json_text));
}

std::string metrics_csv(const BenchmarkTable& t) {
    std::ostringstream out;
    write_metrics_csv(out, t);
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "vrevoke core bindings";

    static py::exception<Error> error(m, "VrevokeError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    m.def("byte_to_trytes", &byte_to_trytes);
    m.def("trytes_to_byte", [](const std::string& pair) { return trytes_to_byte(pair); });
    m.def("derive_address", [](const std::string& hash_hex) { return derive_address(HashedId::from_hex(hash_hex)).str(); });
    m.def("hashed_id", [](const py::bytes& data, std::size_t length) {
        return hash_bytes(as_bytes(data), hash_length_from(length)).hex();
    }, py::arg("data"), py::arg("length") = 8);
    m.def("sha256", [](const py::bytes& data) {
        auto d = sha256(as_bytes(data));
        return to_py(Bytes(d.begin(), d.end()));
    });
    m.def("generate_keypair", [](const std::optional<std::string>& seed) {
        auto kp = seed ? generate_keypair(std::string_view(*seed)) : generate_keypair();
        return py::make_tuple(to_py(kp.public_key), to_py(kp.private_key));
    }, py::arg("seed") = py::none());
    m.def("sign", [](const py::bytes& priv, const py::bytes& msg) { return to_py(sign(as_bytes(priv), as_bytes(msg))); });
    m.def("verify", [](const py::bytes& pub, const py::bytes& msg, const py::bytes& sig) {
        return verify(as_bytes(pub), as_bytes(msg), as_bytes(sig));
    });

    m.def("percentile", [](const std::vector<double>& xs, double p) { return percentile(xs, p); });
    m.def("summarize", [](const std::vector<double>& xs) {
        auto s = summarize(xs);
        return py::dict(py::arg("mean_ms") = s.mean_ms, py::arg("max_ms") = s.max_ms, py::arg("p95_ms") = s.p95_ms,
                        py::arg("n") = s.n);
    });
    m.def("emit_cdf", [](const std::vector<double>& xs) {
        std::vector<std::pair<double, double>> out;
        for (const auto& p : emit_cdf(xs)) out.emplace_back(p.value, p.probability);
        return out;
    });

    m.def("run_check_benchmark", [](const std::string& cfg) { return table_list(run_check_benchmark(scenario(cfg))); },
          py::arg("config_json") = "");
    m.def("run_crl_baseline", [](const std::string& cfg) { return table_list(run_crl_baseline(scenario(cfg))); },
          py::arg("config_json") = "");
    m.def("run_window_benchmark", [](std::size_t n, const std::string& cfg) {
        return cell_dict(run_window_benchmark(scenario(cfg), n));
    }, py::arg("n_revocations"), py::arg("config_json") = "");
    m.def("check_metrics_csv", [](const std::string& cfg) { return metrics_csv(run_check_benchmark(scenario(cfg))); },
          py::arg("config_json") = "");

    py::class_<VpkiService>(m, "Service")
        .def(py::init([](const std::string& store_path, std::uint64_t seed, std::size_t hash_length,
                         std::optional<std::function<std::int64_t()>> clock) {
                 ServiceConfig c;
                 c.store_path = store_path;
                 c.seed = seed;
                 c.hash_length = hash_length_from(hash_length);
                 return std::make_unique<VpkiService>(c, clock ? Clock(*clock) : Clock(system_clock_ms));
             }),
             py::arg("store_path"), py::arg("seed") = 0, py::arg("hash_length") = 8, py::arg("clock") = py::none())
        .def("request", [](VpkiService& s, const std::string& method, const std::string& path, const std::string& body) {
            auto r = handle_request(s, method, path, body);
            return py::make_tuple(r.status, r.body);
        }, py::arg("method"), py::arg("path"), py::arg("body") = "")
        .def("status", [](VpkiService& s, const std::string& h) {
            return std::string(to_string(s.status(HashedId::from_hex(h))));
        })
        .def("resolve", [](VpkiService& s, const std::string& h) { return s.resolve(HashedId::from_hex(h)).str(); });
}
