/**
 * @file cli.cpp
 * @brief Subcommands: bootstrap, issue, revoke, status, resolve, serve, bench-check, bench-window, bench-crl
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "cli.hpp"

#include "vrevoke/config.hpp"
#include "vrevoke/error.hpp"
#include "vrevoke/harness.hpp"
#include "vrevoke/service.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>

namespace vrevoke {

namespace {

struct Options {
    std::string config_path;
    std::string out_path;
    std::string store_path;
    std::string dump_dir;
    std::string listen;
    std::string log_level = "warn";
    std::optional<std::uint64_t> seed;
    std::vector<std::size_t> revoked;
    std::vector<double> freq;
    std::optional<double> duration;
    std::size_t revocations = 10000;
    std::string hash_hex;
    std::string canonical_id;
};

nlohmann::json config_section(const Options& o, const char* section) {
    if (o.config_path.empty()) return nlohmann::json::object();
    auto j = load_json_file(o.config_path);
    if (j.contains("scenario") || j.contains("service")) return j.value(section, nlohmann::json::object());
    return j;
}

ScenarioConfig scenario(const Options& o) {
    auto c = scenario_from_json(config_section(o, "scenario"));
    if (o.seed) c.seed = *o.seed;
    if (!o.revoked.empty()) c.revoked_counts = o.revoked;
    if (!o.freq.empty()) c.frequencies_hz = o.freq;
    if (o.duration) c.duration_s = *o.duration;
    c.validate();
    return c;
}

ServiceConfig service_config(const Options& o) {
    auto c = service_from_json(config_section(o, "service"));
    if (o.seed) c.seed = *o.seed;
    if (!o.store_path.empty()) c.store_path = o.store_path;
    if (!o.listen.empty()) {
        auto colon = o.listen.rfind(':');
        if (colon == std::string::npos) throw Error(ErrorCode::ConfigInvalid, "--listen must be host:port");
        c.host = o.listen.substr(0, colon);
        c.port = std::stoi(o.listen.substr(colon + 1));
    }
    return c;
}

void emit_table(const Options& o, const BenchmarkTable& table, std::ostream& out) {
    if (o.out_path.empty()) {
        write_metrics_csv(out, table);
    } else {
        std::ofstream file(o.out_path, std::ios::binary);
        if (!file) throw Error(ErrorCode::StoreError, fmt::format("cannot write {}", o.out_path));
        write_metrics_csv(file, table);
    }
    if (!o.dump_dir.empty()) {
        std::filesystem::create_directories(o.dump_dir);
        std::ofstream samples(std::filesystem::path(o.dump_dir) / "samples.csv", std::ios::binary);
        write_samples_csv(samples, table);
        std::ofstream cdf(std::filesystem::path(o.dump_dir) / "cdf.csv", std::ios::binary);
        write_cdf_csv(cdf, table);
    }
}

void report_audit(const BenchmarkTable& table, std::ostream& err) {
    for (const auto& cell : table) {
        const auto& a = cell.audit;
        if (a.false_positives || a.false_negatives) {
            err << fmt::format("warning: {} cell ({}, {} Hz) disagrees with ground truth: {} false positives, {} false "
                               "negatives\n",
                               cell.kind, cell.revoked_count, cell.frequency_hz, a.false_positives, a.false_negatives);
        }
    }
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ledger-based certificate revocation for vehicular PKI", "vrevoke"};
    app.require_subcommand(1);
    Options o;

    app.add_option("--config", o.config_path, "JSON config file (sections: scenario, service)");
    app.add_option("--out", o.out_path, "metrics CSV output file (default: stdout)");
    app.add_option("--store", o.store_path, "service journal path");
    app.add_option("--seed", o.seed, "RNG / trust seed");
    app.add_option("--revoked", o.revoked, "revoked counts, comma separated")->delimiter(',');
    app.add_option("--freq", o.freq, "message frequencies in Hz, comma separated")->delimiter(',');
    app.add_option("--duration", o.duration, "message stream duration in seconds");
    app.add_option("--dump-dir", o.dump_dir, "directory for per-sample and CDF dumps");
    app.add_option("--log-level", o.log_level, "trace, debug, info, warn, error, off");

    auto* bootstrap = app.add_subcommand("bootstrap", "create or open the store and print the trust anchors");
    auto* issue = app.add_subcommand("issue", "pre-register, enrol and authorize a vehicle");
    issue->add_option("canonical-id", o.canonical_id)->required();
    auto* revoke = app.add_subcommand("revoke", "report an STC hash to the MA");
    revoke->add_option("hash", o.hash_hex)->required();
    auto* status = app.add_subcommand("status", "revocation status of a certificate hash");
    status->add_option("hash", o.hash_hex)->required();
    auto* resolve = app.add_subcommand("resolve", "resolve an STC hash to its canonical id (bans it)");
    resolve->add_option("hash", o.hash_hex)->required();
    auto* serve = app.add_subcommand("serve", "run the HTTP service");
    serve->add_option("--listen", o.listen, "host:port");
    auto* bench_check = app.add_subcommand("bench-check", "revocation checking delay benchmark");
    auto* bench_window = app.add_subcommand("bench-window", "vulnerability window benchmark");
    bench_window->add_option("--revocations", o.revocations, "number of revocations")->check(CLI::PositiveNumber);
    auto* bench_crl = app.add_subcommand("bench-crl", "CRL linear-scan baseline");
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        spdlog::set_level(spdlog::level::from_str(o.log_level));

        if (*bench_check) {
            auto table = run_check_benchmark(scenario(o));
            report_audit(table, err);
            emit_table(o, table, out);
        } else if (*bench_crl) {
            auto table = run_crl_baseline(scenario(o));
            report_audit(table, err);
            emit_table(o, table, out);
        } else if (*bench_window) {
            BenchmarkTable table{run_window_benchmark(scenario(o), o.revocations)};
            report_audit(table, err);
            emit_table(o, table, out);
        } else if (*serve) {
            auto cfg = service_config(o);
            VpkiService service(cfg);
            HttpServer server(service);
            out << fmt::format("listening on {}:{} (store {})", cfg.host, cfg.port, cfg.store_path.string()) << std::endl;
            server.listen(cfg.host, cfg.port);
        } else {
            VpkiService service(service_config(o));
            if (*bootstrap) {
                const auto& t = service.trust();
                for (const auto* a : {&t.root, &t.ltca, &t.stca, &t.ra, &t.ma}) {
                    out << fmt::format("{}\t{}\t{}\n", std::string(a->cert.subject_id.begin(), a->cert.subject_id.end()),
                                       whole_certificate_hash(a->cert).hex(), to_hex(canonical_encode(a->cert)));
                }
            } else if (*issue) {
                CanonicalId id(o.canonical_id);
                service.preregister(id);
                auto ltc = service.enroll(id, generate_keypair().public_key);
                auto stc = service.authorize(ltc, generate_keypair().public_key);
                out << fmt::format("{}\t{}\t{}\n", id.str(), whole_certificate_hash(ltc, service.hash_length()).hex(),
                                   whole_certificate_hash(stc, service.hash_length()).hex());
            } else if (*revoke) {
                auto outcome = service.report(HashedId::from_hex(o.hash_hex), {}, "cli");
                if (outcome.revocation) {
                    const auto& rev = *outcome.revocation;
                    out << fmt::format("revoked\t{}\t{}\t{}\n", rev.tx.tx_id.hex(), rev.tx.address.str(),
                                       rev.resolved ? rev.resolved->str() : "-");
                } else {
                    out << "already-reported\n";
                }
            } else if (*status) {
                out << to_string(service.status(HashedId::from_hex(o.hash_hex))) << '\n';
            } else if (*resolve) {
                out << service.resolve(HashedId::from_hex(o.hash_hex)).str() << '\n';
            }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace vrevoke
