/**
 * @file harness.cpp
 * @brief Population setup and the check / CRL / window benchmarks
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vrevoke/harness.hpp"

#include "vrevoke/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

namespace vrevoke {

namespace {

constexpr std::int64_t kReportSpacingMs = 100;

struct StreamEvent {
    double arrival_ms;
    std::size_t sender;
};

std::vector<StreamEvent> message_stream(const ScenarioConfig& config, double frequency_hz, std::size_t n_senders,
                                        double start_ms, std::uint64_t seed) {
    auto count = static_cast<std::size_t>(std::floor(frequency_hz * config.duration_s + 1e-9));
    count = std::max<std::size_t>(count, 1);
    const double period_ms = 1000.0 / frequency_hz;
    Rng rng(seed);
    std::vector<StreamEvent> events;
    events.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        events.push_back({start_ms + static_cast<double>(k) * period_ms, static_cast<std::size_t>(rng.below(n_senders))});
    }
    return events;
}

/// Single-server FIFO: returns the delay of a job arriving at `arrival` and taking `service` ms.
class SerialQueue {
public:
    double admit(double arrival_ms, double service_ms, double* start_ms = nullptr) {
        double start = std::max(arrival_ms, busy_until_);
        if (start_ms) *start_ms = start;
        busy_until_ = start + service_ms;
        return busy_until_ - arrival_ms;
    }
    double next_start(double arrival_ms) const { return std::max(arrival_ms, busy_until_); }

private:
    double busy_until_ = -std::numeric_limits<double>::infinity();
};

std::uint64_t cell_seed(std::uint64_t seed, std::size_t revoked, std::size_t freq_index) {
    return mix_seed(mix_seed(seed, revoked), 1000 + freq_index);
}

void record_queries(CellAudit& audit, std::size_t queries) {
    if (audit.events == 1) {
        audit.min_queries_per_check = audit.max_queries_per_check = queries;
    } else {
        audit.min_queries_per_check = std::min(audit.min_queries_per_check, queries);
        audit.max_queries_per_check = std::max(audit.max_queries_per_check, queries);
    }
}

CellResult finish_cell(std::string kind, std::size_t revoked, double frequency, std::vector<double> samples,
                       const CellAudit& audit) {
    CellResult cell;
    cell.kind = std::move(kind);
    cell.revoked_count = revoked;
    cell.frequency_hz = frequency;
    cell.stats = summarize(samples);
    cell.samples = std::move(samples);
    cell.audit = audit;
    return cell;
}

Bytes message_payload(std::size_t k) { return to_bytes(fmt::format("cam:{:08d}", k)); }

}  // namespace

// ----------------------------------------------------------------------------

void ScenarioConfig::validate() const {
    auto fail = [](const std::string& why) { throw Error(ErrorCode::ConfigInvalid, why); };
    if (!(revoked_fraction >= 0.0 && revoked_fraction <= 1.0)) fail("revoked_fraction must be in [0, 1]");
    if (!revoked_counts.empty() && revoked_fraction == 0.0) fail("revoked_fraction must be > 0 when sweeping counts");
    if (revoked_counts.empty() && n_certificates == 0) fail("n_certificates must be > 0");
    if (frequencies_hz.empty()) fail("at least one frequency is required");
    for (double f : frequencies_hz) {
        if (!(f > 0.0) || !std::isfinite(f)) fail("frequencies must be positive");
    }
    if (!(duration_s > 0.0) || !std::isfinite(duration_s)) fail("duration_s must be positive");
    if (!(work.hash_ms >= 0.0 && work.verify_ms >= 0.0 && work.crl_entry_ms >= 0.0)) fail("work costs must be >= 0");
    for (auto [revoked, total] : populations()) {
        if (total == 0) fail("population is empty");
        if (revoked > total) fail("more revoked than issued certificates");
    }
}

std::vector<std::pair<std::size_t, std::size_t>> ScenarioConfig::populations() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (revoked_counts.empty()) {
        auto revoked = static_cast<std::size_t>(std::llround(revoked_fraction * static_cast<double>(n_certificates)));
        out.emplace_back(revoked, n_certificates);
        return out;
    }
    for (auto r : revoked_counts) {
        auto total = revoked_fraction > 0.0
                         ? static_cast<std::size_t>(std::ceil(static_cast<double>(r) / revoked_fraction - 1e-9))
                         : 0;
        out.emplace_back(r, std::max(total, r));
    }
    return out;
}

// ----------------------------------------------------------------------------

std::unique_ptr<Population> Population::build(const ScenarioConfig& config, std::size_t revoked, std::size_t total,
                                              std::uint64_t seed) {
    if (revoked > total) throw Error(ErrorCode::ConfigInvalid, "more revoked than issued certificates");
    std::unique_ptr<Population> pop(new Population());
    pop->ledger_ = std::make_unique<Ledger>(config.publish_latency, mix_seed(seed, 0x4C45));
    TrustConfig trust;
    trust.seed = seed;
    pop->vpki_ = std::make_unique<Vpki>(trust, *pop->ledger_);

    auto& vpki = *pop->vpki_;
    const std::int64_t now_s = to_unix_seconds(config.start_time_ms);
    pop->vehicles_.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        CanonicalId id(fmt::format("VEH-{:06d}", i));
        vpki.ltca().preregister(id);
        auto ltc_keys = generate_keypair(fmt::format("vehicle/{}/{}/ltc", seed, i));
        auto stc_keys = generate_keypair(fmt::format("vehicle/{}/{}/stc", seed, i));
        auto ltc = vpki.ltca().enroll(id, ltc_keys.public_key, now_s);
        auto stc = vpki.stca().authorize(ltc, stc_keys.public_key, now_s);
        pop->vehicles_.push_back(Vehicle{std::move(id), std::move(ltc), std::move(stc), std::move(stc_keys), false});
    }

    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(mix_seed(seed, 0x5245));
    for (std::size_t i = total; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

    std::int64_t ready = config.start_time_ms;
    for (std::size_t k = 0; k < revoked; ++k) {
        auto& vehicle = pop->vehicles_[order[k]];
        vehicle.revoked = true;
        auto hash = whole_certificate_hash(vehicle.stc, trust.hash_length);
        MisbehaviorReport report{hash, to_bytes("harness"), "harness", now_s};
        auto outcome = vpki.ma().report_misbehavior(report, config.start_time_ms);
        ready = std::max(ready, outcome.revocation->receipt.queryable_time_ms);
        pop->revoked_hashes_.insert(hash);
        pop->crl_.push_back(hash);
    }
    pop->ready_time_ms_ = ready + 1;
    return pop;
}

StationConfig Population::station_config(std::string id, Connectivity connectivity) const {
    StationConfig cfg;
    cfg.id = std::move(id);
    cfg.connectivity = connectivity;
    const auto& trust = vpki_->trust();
    cfg.root_cert = trust.root.cert;
    cfg.ra_cert = trust.ra.cert;
    cfg.authority_certs = {trust.ltca.cert, trust.stca.cert};
    cfg.hash_length = trust.config.hash_length;
    return cfg;
}

// ----------------------------------------------------------------------------

BenchmarkTable run_check_benchmark(const ScenarioConfig& config) {
    config.validate();
    BenchmarkTable table;
    for (auto [revoked, total] : config.populations()) {
        auto pop = Population::build(config, revoked, total, mix_seed(config.seed, revoked));
        const auto& vehicles = pop->vehicles();
        for (std::size_t fi = 0; fi < config.frequencies_hz.size(); ++fi) {
            const double freq = config.frequencies_hz[fi];
            const auto seed = cell_seed(config.seed, revoked, fi);
            Station obu(pop->station_config("obu"), pop->ledger(), config.check_latency, mix_seed(seed, 1));
            auto stream = message_stream(config, freq, vehicles.size(), static_cast<double>(pop->ready_time_ms()), seed);

            SerialQueue queue;
            CellAudit audit;
            std::vector<double> delays;
            delays.reserve(stream.size());
            for (std::size_t k = 0; k < stream.size(); ++k) {
                const auto& ev = stream[k];
                const auto& sender = vehicles[ev.sender];
                auto at_ms = static_cast<std::int64_t>(std::floor(ev.arrival_ms));
                auto msg = make_secured_message(message_payload(k), sender.stc, sender.stc_keys, at_ms);
                auto start = queue.next_start(ev.arrival_ms);
                auto trace = obu.receive_traced(msg, static_cast<std::int64_t>(std::floor(start)));
                double service = trace.check.latency_ms + config.work.hash_ms +
                                 config.work.verify_ms * static_cast<double>(trace.check.transactions_seen);
                delays.push_back(queue.admit(ev.arrival_ms, service));

                ++audit.events;
                record_queries(audit, trace.check.ledger_queries);
                bool flagged = trace.result == ReceiveResult::IgnoredRevoked;
                if (flagged) ++audit.ignored_revoked;
                if (trace.result == ReceiveResult::Accepted) ++audit.accepted;
                if (!flagged && trace.result != ReceiveResult::Accepted) ++audit.ignored_other;
                if (flagged && !sender.revoked) ++audit.false_positives;
                if (!flagged && sender.revoked) ++audit.false_negatives;
            }
            table.push_back(finish_cell("check", revoked, freq, std::move(delays), audit));
        }
    }
    return table;
}

BenchmarkTable run_crl_baseline(const ScenarioConfig& config) {
    config.validate();
    BenchmarkTable table;
    for (auto [revoked, total] : config.populations()) {
        auto pop = Population::build(config, revoked, total, mix_seed(config.seed, revoked));
        const auto& vehicles = pop->vehicles();
        const auto& crl = pop->crl();
        for (std::size_t fi = 0; fi < config.frequencies_hz.size(); ++fi) {
            const double freq = config.frequencies_hz[fi];
            auto stream = message_stream(config, freq, vehicles.size(), static_cast<double>(pop->ready_time_ms()),
                                         cell_seed(config.seed, revoked, fi));
            SerialQueue queue;
            CellAudit audit;
            std::vector<double> all;
            std::vector<double> misses;
            for (const auto& ev : stream) {
                const auto& sender = vehicles[ev.sender];
                auto hash = whole_certificate_hash(sender.stc);
                std::size_t compared = 0;
                bool found = false;
                for (const auto& entry : crl) {
                    ++compared;
                    if (entry == hash) {
                        found = true;
                        break;
                    }
                }
                double service = config.work.hash_ms + config.work.crl_entry_ms * static_cast<double>(compared);
                double delay = queue.admit(ev.arrival_ms, service);
                all.push_back(delay);
                if (!found) misses.push_back(delay);

                ++audit.events;
                record_queries(audit, 0);
                if (found) {
                    ++audit.ignored_revoked;
                } else {
                    ++audit.accepted;
                }
                if (found && !sender.revoked) ++audit.false_positives;
                if (!found && sender.revoked) ++audit.false_negatives;
            }
            table.push_back(finish_cell("crl", revoked, freq, std::move(all), audit));
            if (!misses.empty()) table.push_back(finish_cell("crl_miss", revoked, freq, std::move(misses), audit));
        }
    }
    return table;
}

CellResult run_window_benchmark(const ScenarioConfig& config, std::size_t n_revocations) {
    if (n_revocations == 0) throw Error(ErrorCode::InvalidArgument, "n_revocations must be >= 1");
    auto seed = mix_seed(config.seed, 0x57494E);
    auto pop = Population::build(config, 0, n_revocations, seed);
    auto& ma = pop->vpki().ma();
    auto& ledger = pop->ledger();

    CellAudit audit;
    std::vector<double> windows;
    windows.reserve(n_revocations);
    for (std::size_t i = 0; i < n_revocations; ++i) {
        const auto& vehicle = pop->vehicles()[i];
        const std::int64_t reported_at = pop->ready_time_ms() + static_cast<std::int64_t>(i) * kReportSpacingMs;
        auto hash = whole_certificate_hash(vehicle.stc);
        MisbehaviorReport report{hash, to_bytes("harness"), "harness", to_unix_seconds(reported_at)};
        auto outcome = ma.report_misbehavior(report, reported_at);
        const auto queryable = outcome.revocation->receipt.queryable_time_ms;
        windows.push_back(static_cast<double>(queryable - reported_at));

        ++audit.events;
        ++audit.ignored_revoked;
        auto address = derive_address(hash);
        if (ledger.find_transactions(address, queryable).empty()) ++audit.false_negatives;
        if (queryable > reported_at && !ledger.find_transactions(address, queryable - 1).empty()) {
            ++audit.false_positives;
        }
        record_queries(audit, 2);
    }
    return finish_cell("window", n_revocations, 0.0, std::move(windows), audit);
}

// ----------------------------------------------------------------------------

namespace {

std::string fmt_number(double v) { return fmt::format("{:.6f}", v); }
std::string fmt_frequency(double v) { return fmt::format("{:g}", v); }

}  // namespace

void write_metrics_csv(std::ostream& out, const BenchmarkTable& table) {
    out << "kind,revoked_count,frequency_hz,mean_ms,max_ms,p95_ms,n\n";
    for (const auto& cell : table) {
        out << fmt::format("{},{},{},{},{},{},{}\n", cell.kind, cell.revoked_count, fmt_frequency(cell.frequency_hz),
                           fmt_number(cell.stats.mean_ms), fmt_number(cell.stats.max_ms),
                           fmt_number(cell.stats.p95_ms), cell.stats.n);
    }
}

void write_samples_csv(std::ostream& out, const BenchmarkTable& table) {
    out << "kind,revoked_count,frequency_hz,index,value_ms\n";
    for (const auto& cell : table) {
        for (std::size_t i = 0; i < cell.samples.size(); ++i) {
            out << fmt::format("{},{},{},{},{}\n", cell.kind, cell.revoked_count, fmt_frequency(cell.frequency_hz), i,
                               fmt_number(cell.samples[i]));
        }
    }
}

void write_cdf_csv(std::ostream& out, const BenchmarkTable& table) {
    out << "kind,revoked_count,frequency_hz,value_ms,cumulative_probability\n";
    for (const auto& cell : table) {
        for (const auto& point : emit_cdf(cell.samples)) {
            out << fmt::format("{},{},{},{},{}\n", cell.kind, cell.revoked_count, fmt_frequency(cell.frequency_hz),
                               fmt_number(point.value), fmt_number(point.probability));
        }
    }
}

}  // namespace vrevoke
