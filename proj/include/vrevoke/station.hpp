/**
 * @file station.hpp
 * @brief OBU/RSU runtime: secured messages, revocation checks and P2P delegation
 *
 * Receive pipeline: revocation status of the signer first (Revoked or Unknown
 * drops the message), then certificate chain and message signature, then
 * accept. A station without ledger access asks its neighbours, in configured
 * order, one hop deep. No answers are cached.
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vrevoke/certkit.hpp"
#include "vrevoke/tangle.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace vrevoke {

struct SecuredMessage {
    Bytes payload;
    std::int64_t generation_time_ms = 0;
    Certificate signer_cert;
    Bytes signature;

    /// payload || generation_time || HashedId8(signer_cert)
    Bytes signed_bytes() const;
};

/// Signs `payload` under the STC key; no validity checks.
SecuredMessage make_secured_message(ByteView payload, const Certificate& stc, const KeyPair& keys,
                                    std::int64_t generation_time_ms);

enum class Connectivity { Direct, P2POnly, Offline };
enum class RevocationStatus { Valid, Revoked, Unknown };
enum class ReceiveResult { Accepted, IgnoredRevoked, IgnoredUnknown, IgnoredBadSignature };

std::string_view to_string(Connectivity c) noexcept;
std::string_view to_string(RevocationStatus s) noexcept;
std::string_view to_string(ReceiveResult r) noexcept;

struct StationConfig {
    std::string id;
    Connectivity connectivity = Connectivity::Direct;
    std::vector<std::string> neighbor_ids;
    Certificate root_cert;
    Certificate ra_cert;
    /// Issuing CAs (LTCA/STCA); each must verify under root_cert or construction fails.
    std::vector<Certificate> authority_certs;
    HashLength hash_length = HashLength::H8;
    /// Benchmark knob: verify chain and signature before touching the ledger.
    bool verify_before_revocation_check = false;
};

struct CheckTrace {
    RevocationStatus status = RevocationStatus::Unknown;
    std::size_t ledger_queries = 0;
    std::size_t transactions_seen = 0;
    double latency_ms = 0.0;
    std::string answered_by;
};

struct ReceiveTrace {
    ReceiveResult result = ReceiveResult::IgnoredUnknown;
    CheckTrace check;
};

class Station;

/// Who can hear whom for delegated checks. Stations register themselves.
class StationNetwork {
public:
    void add(Station& station);
    Station* find(const std::string& id) const;
    void set_reachable(const std::string& id, bool reachable);
    bool reachable(const std::string& id) const;

private:
    std::map<std::string, Station*> stations_;
    std::set<std::string> unreachable_;
};

class Station {
public:
    /// Throws BadChain if an authority certificate does not verify under the root.
    Station(StationConfig config, const Ledger& ledger, LatencyModel ledger_latency = LatencyModel::zero(),
            std::uint64_t seed = 0, StationNetwork* network = nullptr);

    const StationConfig& config() const noexcept { return config_; }
    const std::string& id() const noexcept { return config_.id; }

    void install_credential(const Certificate& stc, const KeyPair& keys);

    /// Throws NoCredential if `stc` was not installed, ExpiredCredential if it is not valid at now.
    SecuredMessage send(ByteView payload, const Certificate& stc, std::int64_t now_ms) const;

    RevocationStatus check_revocation(const Certificate& cert, std::int64_t now_ms);
    CheckTrace check_revocation_traced(const HashedId& cert_hash, std::int64_t now_ms);

    ReceiveResult receive(const SecuredMessage& msg, std::int64_t now_ms);
    ReceiveTrace receive_traced(const SecuredMessage& msg, std::int64_t now_ms);

    /// Chain up to the root, validity of the signer at the generation time, and the message signature.
    bool verify_message(const SecuredMessage& msg) const;

    /// Ledger lookup on behalf of another station. Only Direct stations can
    /// answer; anything else reports Unknown (delegation is one hop).
    CheckTrace answer_delegated(const HashedId& cert_hash, std::int64_t now_ms);

    std::uint64_t ledger_queries() const noexcept { return ledger_queries_; }

private:
    CheckTrace direct_check(const HashedId& cert_hash, std::int64_t now_ms);
    CheckTrace delegated_check(const HashedId& cert_hash, std::int64_t now_ms);
    const Certificate* issuer_of(const Certificate& cert) const;

    StationConfig config_;
    const Ledger& ledger_;
    LatencyModel ledger_latency_;
    Rng rng_;
    StationNetwork* network_;
    std::map<HashedId, KeyPair> credentials_;
    std::uint64_t ledger_queries_ = 0;
};

/// `neighbor` performs the lookup for `requester`. Throws NeighborUnreachable.
RevocationStatus delegate_check(Station& requester, Station& neighbor, const HashedId& cert_hash,
                                std::int64_t now_ms, const StationNetwork& network);

}  // namespace vrevoke
