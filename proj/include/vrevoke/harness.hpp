/**
 * @file harness.hpp
 * @brief Discrete-event benchmarks for revocation checking and publication
 *
 * Every cell builds a population through the real authorities (enrol,
 * authorize, report), then replays a periodic message stream into a single
 * receiving station that processes messages serially. Time is virtual; the
 * latency models stand in for network and ledger node, and WorkModel assigns
 * fixed costs to local computation so that seeded runs are byte-reproducible.
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vrevoke/authorities.hpp"
#include "vrevoke/stats.hpp"
#include "vrevoke/station.hpp"
#include "vrevoke/tangle.hpp"

#include <iosfwd>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace vrevoke {

struct WorkModel {
    double hash_ms = 0.0;          ///< hashing + address derivation, once per check
    double verify_ms = 0.0;        ///< per ledger transaction inspected
    double crl_entry_ms = 0.001;   ///< per CRL entry compared
};

struct ScenarioConfig {
    /// Population size when revoked_counts is empty (fraction sweep); otherwise
    /// each cell issues revoked_count / revoked_fraction certificates.
    std::size_t n_certificates = 1000;
    double revoked_fraction = 0.5;
    std::vector<std::size_t> revoked_counts{500, 5000, 10000};
    std::vector<double> frequencies_hz{1.0, 2.0, 10.0};
    double duration_s = 300.0;
    LatencyModel check_latency = LatencyModel::constant(10.0);
    LatencyModel publish_latency = LatencyModel::fit_lognormal(8000.0, 18570.0, 82960.0);
    WorkModel work;
    std::uint64_t seed = 1;
    std::int64_t start_time_ms = 1'700'000'000'000;

    /// Throws ConfigInvalid.
    void validate() const;
    /// (revoked, total) per population; one entry for a fraction sweep.
    std::vector<std::pair<std::size_t, std::size_t>> populations() const;
};

struct Vehicle {
    CanonicalId id;
    Certificate ltc;
    Certificate stc;
    KeyPair stc_keys;
    bool revoked = false;
};

/// Issued vehicles plus their ledger, with `revoked` of them reported to the MA.
class Population {
public:
    static std::unique_ptr<Population> build(const ScenarioConfig& config, std::size_t revoked, std::size_t total,
                                             std::uint64_t seed);

    Vpki& vpki() noexcept { return *vpki_; }
    Ledger& ledger() noexcept { return *ledger_; }
    const std::vector<Vehicle>& vehicles() const noexcept { return vehicles_; }
    /// Plain set of revoked STC hashes, kept independently of the ledger.
    const std::set<HashedId>& revoked_hashes() const noexcept { return revoked_hashes_; }
    /// Revoked hashes in publication order, i.e. the CRL an authority would ship.
    const std::vector<HashedId>& crl() const noexcept { return crl_; }
    /// First instant at which every revocation is queryable.
    std::int64_t ready_time_ms() const noexcept { return ready_time_ms_; }

    StationConfig station_config(std::string id, Connectivity connectivity = Connectivity::Direct) const;

private:
    Population() = default;

    std::unique_ptr<Ledger> ledger_;
    std::unique_ptr<Vpki> vpki_;
    std::vector<Vehicle> vehicles_;
    std::set<HashedId> revoked_hashes_;
    std::vector<HashedId> crl_;
    std::int64_t ready_time_ms_ = 0;
};

/// Ground-truth agreement and per-check ledger traffic of one cell.
struct CellAudit {
    std::size_t events = 0;
    std::size_t accepted = 0;
    std::size_t ignored_revoked = 0;
    std::size_t ignored_other = 0;
    std::size_t false_positives = 0;
    std::size_t false_negatives = 0;
    std::size_t min_queries_per_check = 0;
    std::size_t max_queries_per_check = 0;
};

struct CellResult {
    std::string kind;  ///< check, crl, crl_miss, window
    std::size_t revoked_count = 0;
    double frequency_hz = 0.0;
    DelayStats stats;
    std::vector<double> samples;
    CellAudit audit;
};

using BenchmarkTable = std::vector<CellResult>;

BenchmarkTable run_check_benchmark(const ScenarioConfig& config);
/// Throws InvalidArgument if n_revocations == 0.
CellResult run_window_benchmark(const ScenarioConfig& config, std::size_t n_revocations);
/// Emits a `crl` row over all messages and a `crl_miss` row over unrevoked senders only.
BenchmarkTable run_crl_baseline(const ScenarioConfig& config);

/// Header `kind,revoked_count,frequency_hz,mean_ms,max_ms,p95_ms,n`.
void write_metrics_csv(std::ostream& out, const BenchmarkTable& table);
/// `kind,revoked_count,frequency_hz,index,value_ms`
void write_samples_csv(std::ostream& out, const BenchmarkTable& table);
/// `kind,revoked_count,frequency_hz,value_ms,cumulative_probability`
void write_cdf_csv(std::ostream& out, const BenchmarkTable& table);

}  // namespace vrevoke
