/**
 * @file station.cpp
 * @brief Station receive pipeline and revocation checking
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vrevoke/station.hpp"

#include "vrevoke/authorities.hpp"
#include "vrevoke/error.hpp"

#include <fmt/format.h>

namespace vrevoke {

Bytes SecuredMessage::signed_bytes() const {
    ByteWriter w;
    w.put_raw(payload);
    w.put_i64(generation_time_ms);
    w.put_raw(whole_certificate_hash(signer_cert).bytes());
    return std::move(w).bytes();
}

SecuredMessage make_secured_message(ByteView payload, const Certificate& stc, const KeyPair& keys,
                                    std::int64_t generation_time_ms) {
    SecuredMessage msg{Bytes(payload.begin(), payload.end()), generation_time_ms, stc, {}};
    msg.signature = sign(keys.private_key, msg.signed_bytes());
    return msg;
}

std::string_view to_string(Connectivity c) noexcept {
    switch (c) {
        case Connectivity::Direct: return "direct";
        case Connectivity::P2POnly: return "p2p-only";
        case Connectivity::Offline: return "offline";
    }
    return "?";
}

std::string_view to_string(RevocationStatus s) noexcept {
    switch (s) {
        case RevocationStatus::Valid: return "valid";
        case RevocationStatus::Revoked: return "revoked";
        case RevocationStatus::Unknown: return "unknown";
    }
    return "?";
}

std::string_view to_string(ReceiveResult r) noexcept {
    switch (r) {
        case ReceiveResult::Accepted: return "accepted";
        case ReceiveResult::IgnoredRevoked: return "ignored-revoked";
        case ReceiveResult::IgnoredUnknown: return "ignored-unknown";
        case ReceiveResult::IgnoredBadSignature: return "ignored-bad-signature";
    }
    return "?";
}

// ----------------------------------------------------------------------------

void StationNetwork::add(Station& station) { stations_[station.id()] = &station; }

Station* StationNetwork::find(const std::string& id) const {
    auto it = stations_.find(id);
    return it == stations_.end() ? nullptr : it->second;
}

void StationNetwork::set_reachable(const std::string& id, bool reachable) {
    if (reachable) {
        unreachable_.erase(id);
    } else {
        unreachable_.insert(id);
    }
}

bool StationNetwork::reachable(const std::string& id) const {
    return stations_.contains(id) && !unreachable_.contains(id);
}

// ----------------------------------------------------------------------------

Station::Station(StationConfig config, const Ledger& ledger, LatencyModel ledger_latency, std::uint64_t seed,
                 StationNetwork* network)
    : config_(std::move(config)), ledger_(ledger), ledger_latency_(ledger_latency), rng_(seed), network_(network) {
    if (!verify_issued_by(config_.root_cert, config_.root_cert)) {
        throw Error(ErrorCode::BadChain, "root certificate is not validly self-signed");
    }
    for (const auto& cert : config_.authority_certs) {
        if (!verify_issued_by(cert, config_.root_cert)) {
            throw Error(ErrorCode::BadChain, "authority certificate does not verify under the root");
        }
    }
    if (!config_.ra_cert.public_key.empty() && !verify_issued_by(config_.ra_cert, config_.root_cert)) {
        throw Error(ErrorCode::BadChain, "RA certificate does not verify under the root");
    }
    if (network_) network_->add(*this);
}

void Station::install_credential(const Certificate& stc, const KeyPair& keys) {
    credentials_[whole_certificate_hash(stc)] = keys;
}

SecuredMessage Station::send(ByteView payload, const Certificate& stc, std::int64_t now_ms) const {
    auto it = credentials_.find(whole_certificate_hash(stc));
    if (it == credentials_.end()) throw Error(ErrorCode::NoCredential, "STC not installed on this station");
    if (!stc.valid_at(to_unix_seconds(now_ms))) {
        throw Error(ErrorCode::ExpiredCredential, fmt::format("STC not valid at {} ms", now_ms));
    }
    return make_secured_message(payload, stc, it->second, now_ms);
}

RevocationStatus Station::check_revocation(const Certificate& cert, std::int64_t now_ms) {
    return check_revocation_traced(whole_certificate_hash(cert, config_.hash_length), now_ms).status;
}

CheckTrace Station::check_revocation_traced(const HashedId& cert_hash, std::int64_t now_ms) {
    switch (config_.connectivity) {
        case Connectivity::Direct: return direct_check(cert_hash, now_ms);
        case Connectivity::P2POnly: return delegated_check(cert_hash, now_ms);
        case Connectivity::Offline: break;
    }
    return CheckTrace{RevocationStatus::Unknown, 0, 0, 0.0, {}};
}

CheckTrace Station::direct_check(const HashedId& cert_hash, std::int64_t now_ms) {
    CheckTrace trace;
    trace.answered_by = config_.id;
    auto txs = ledger_.find_transactions(derive_address(cert_hash), now_ms);
    ++ledger_queries_;
    trace.ledger_queries = 1;
    trace.transactions_seen = txs.size();
    trace.latency_ms = ledger_latency_.sample(rng_);
    trace.status = RevocationStatus::Valid;
    for (const auto& tx : txs) {
        try {
            auto payload = RevocationPayload::decode(tx.payload);
            if (payload.revoked_hash == cert_hash && payload.verify(config_.ra_cert)) {
                trace.status = RevocationStatus::Revoked;
                break;
            }
        } catch (const Error&) {
            // Unparseable entries are noise on an open ledger.
        }
    }
    return trace;
}

CheckTrace Station::delegated_check(const HashedId& cert_hash, std::int64_t now_ms) {
    CheckTrace trace;
    if (!network_) return trace;
    for (const auto& neighbor_id : config_.neighbor_ids) {
        if (!network_->reachable(neighbor_id)) continue;
        auto answer = network_->find(neighbor_id)->answer_delegated(cert_hash, now_ms);
        trace.ledger_queries += answer.ledger_queries;
        trace.latency_ms += answer.latency_ms;
        if (answer.status != RevocationStatus::Unknown) {
            answer.ledger_queries = trace.ledger_queries;
            answer.latency_ms = trace.latency_ms;
            return answer;
        }
    }
    trace.status = RevocationStatus::Unknown;
    return trace;
}

CheckTrace Station::answer_delegated(const HashedId& cert_hash, std::int64_t now_ms) {
    if (config_.connectivity != Connectivity::Direct) return CheckTrace{RevocationStatus::Unknown, 0, 0, 0.0, id()};
    return direct_check(cert_hash, now_ms);
}

const Certificate* Station::issuer_of(const Certificate& cert) const {
    for (const auto& ca : config_.authority_certs) {
        if (whole_certificate_hash(ca) == cert.issuer_hash) return &ca;
    }
    return nullptr;
}

bool Station::verify_message(const SecuredMessage& msg) const {
    const auto& signer = msg.signer_cert;
    if (signer.kind != CertKind::Stc) return false;
    const Certificate* issuer = issuer_of(signer);
    if (!issuer || !verify_issued_by(signer, *issuer)) return false;
    auto generated_s = to_unix_seconds(msg.generation_time_ms);
    if (!signer.valid_at(generated_s) || !issuer->valid_at(generated_s)) return false;
    try {
        return verify(signer.public_key, msg.signed_bytes(), msg.signature);
    } catch (const Error&) {
        return false;
    }
}

ReceiveResult Station::receive(const SecuredMessage& msg, std::int64_t now_ms) {
    return receive_traced(msg, now_ms).result;
}

ReceiveTrace Station::receive_traced(const SecuredMessage& msg, std::int64_t now_ms) {
    ReceiveTrace out;
    if (config_.verify_before_revocation_check && !verify_message(msg)) {
        out.result = ReceiveResult::IgnoredBadSignature;
        return out;
    }
    out.check = check_revocation_traced(whole_certificate_hash(msg.signer_cert, config_.hash_length), now_ms);
    if (out.check.status == RevocationStatus::Revoked) {
        out.result = ReceiveResult::IgnoredRevoked;
    } else if (out.check.status == RevocationStatus::Unknown) {
        out.result = ReceiveResult::IgnoredUnknown;
    } else if (!config_.verify_before_revocation_check && !verify_message(msg)) {
        out.result = ReceiveResult::IgnoredBadSignature;
    } else {
        out.result = ReceiveResult::Accepted;
    }
    return out;
}

RevocationStatus delegate_check(Station& requester, Station& neighbor, const HashedId& cert_hash,
                                std::int64_t now_ms, const StationNetwork& network) {
    if (!network.reachable(neighbor.id())) {
        throw Error(ErrorCode::NeighborUnreachable, fmt::format("{} cannot reach {}", requester.id(), neighbor.id()));
    }
    return neighbor.answer_delegated(cert_hash, now_ms).status;
}

}  // namespace vrevoke
