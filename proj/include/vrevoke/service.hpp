/**
 * @file service.hpp
 * @brief Single-process VPKI service: all five authorities plus the ledger,
 *        persisted to an append-only journal and exposed over HTTP/JSON
 *
 * Journal: one event per line, tab-separated, leading event token, byte
 * strings in lowercase hex.
 *
 *   VREVOKE-JOURNAL 1
 *   CONFIG   <hash_id_length> <seed>
 *   PREREG   <canonical-id hex>
 *   LTC      <ltc hash> <canonical-id hex> <issue time s>
 *   STC      <stc hash> <ltc hash> <issue time s>
 *   BAN      <canonical-id hex> <ban time s>
 *   REPORT   <stc hash> <report time s>
 *   ATTACH   <address> <attach ms> <queryable ms> <tx id> <payload hex>
 *
 * Endpoints (bodies are JSON objects):
 *
 *   POST /preregister          {"canonical_id"}
 *   POST /enroll               {"canonical_id", "public_key"}        -> {"ltc", "ltc_hash"}
 *   POST /authorize            {"ltc", "public_key"}                 -> {"stc", "stc_hash"}
 *   POST /misbehavior-report   {"stc_hash", "evidence"?, "reporter"?}
 *   POST /resolve              {"stc_hash"}                          -> {"canonical_id"}
 *   GET  /revocation-status/<hash>                                   -> {"hash", "status"}
 *   GET  /ledger-address/<address>                                   -> {"address", "transactions"}
 *   GET  /trust                                                      -> authority certificates
 *
 * 400 malformed request, 403 banned or rejected, 404 unknown hash or empty address.
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vrevoke/authorities.hpp"
#include "vrevoke/station.hpp"
#include "vrevoke/tangle.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <string>

namespace vrevoke {

using Clock = std::function<std::int64_t()>;  ///< Unix milliseconds

std::int64_t system_clock_ms();

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8088;
    std::filesystem::path store_path = "vrevoke.journal";
    HashLength hash_length = HashLength::H8;
    LatencyModel publish_latency = LatencyModel::zero();
    std::uint64_t seed = 0;
};

/// Reads {"listen": "host:port", "store_path", "hash_id_length", "publish_latency", "seed"}.
ServiceConfig service_from_json(const nlohmann::json& j);

class Journal {
public:
    explicit Journal(std::filesystem::path path);

    /// Writes one tab-joined line and flushes. Throws StoreError.
    void append(const std::vector<std::string>& fields);

    /// Calls `visit` with the fields of every non-empty line, in order.
    static void replay(const std::filesystem::path& path,
                       const std::function<void(const std::vector<std::string>&)>& visit);

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::mutex mutex_;
    std::filesystem::path path_;
    std::ofstream out_;
};

class VpkiService : private AuthorityObserver {
public:
    /// Replays the journal at config.store_path if it exists, otherwise
    /// bootstraps and starts a new one. Throws ConfigInvalid if the stored
    /// HashedId length differs from the configured one.
    explicit VpkiService(const ServiceConfig& config, Clock clock = system_clock_ms);
    ~VpkiService() override;

    VpkiService(const VpkiService&) = delete;
    VpkiService& operator=(const VpkiService&) = delete;

    const TrustDomain& trust() const noexcept { return vpki_->trust(); }
    HashLength hash_length() const noexcept { return hash_length_; }
    Vpki& vpki() noexcept { return *vpki_; }
    Ledger& ledger() noexcept { return *ledger_; }

    void preregister(const CanonicalId& id);
    Certificate enroll(const CanonicalId& id, ByteView public_key);
    Certificate authorize(const Certificate& ltc, ByteView public_key);
    ReportOutcome report(const HashedId& stc_hash, Bytes evidence = {}, std::string reporter = "service");
    CanonicalId resolve(const HashedId& stc_hash);
    RevocationStatus status(const HashedId& cert_hash);
    std::vector<ZeroValueTransaction> ledger_address(const TryteAddress& address);

    std::int64_t now_ms() const { return clock_(); }

private:
    void on_preregistered(const CanonicalId& id) override;
    void on_ltc_issued(const IssuanceRecord& record) override;
    void on_stc_issued(const IssuanceRecord& record) override;
    void on_banned(const CanonicalId& id, std::int64_t ban_time) override;
    void on_reported(const HashedId& hash, std::int64_t report_time) override;

    void replay_line(const std::vector<std::string>& fields);

    Clock clock_;
    HashLength hash_length_;
    std::uint64_t seed_;
    std::unique_ptr<Ledger> ledger_;
    std::unique_ptr<Vpki> vpki_;
    std::unique_ptr<Station> checker_;
    std::mutex checker_mutex_;
    std::unique_ptr<Journal> journal_;
};

struct HttpResponse {
    int status = 200;
    std::string body;

    friend bool operator==(const HttpResponse&, const HttpResponse&) = default;
};

/// Transport-independent request dispatch; the HTTP server is a thin wrapper over it.
HttpResponse handle_request(VpkiService& service, std::string_view method, std::string_view path,
                            std::string_view body);

class HttpServer {
public:
    explicit HttpServer(VpkiService& service);
    ~HttpServer();

    /// Binds and serves on a background thread; port 0 picks a free port. Returns the bound port.
    int start(const std::string& host, int port);
    /// Blocks serving on the calling thread.
    void listen(const std::string& host, int port);
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace vrevoke
