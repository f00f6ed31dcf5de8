/**
 * @file authorities.hpp
 * @brief VPKI authorities: RootCA, LTCA, STCA, RA and MA
 *
 * One home domain. Each authority serialises its own requests behind a mutex.
 * The RA publishes a revocation on the ledger first and then resolves the
 * pseudonym back to its canonical identity (STCA -> LTCA) and asks the LTCA to
 * ban it. Only that two-step join links an STC to a vehicle: STCA records
 * hold the parent LTC hash and never a canonical id.
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vrevoke/certkit.hpp"
#include "vrevoke/tangle.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

namespace vrevoke {

inline std::int64_t to_unix_seconds(std::int64_t unix_ms) {
    return unix_ms >= 0 ? unix_ms / 1000 : -((-unix_ms + 999) / 1000);
}

struct IssuanceRecord {
    HashedId issued_cert_hash;
    HashedId parent_ref;                  ///< LTC hash for STC records; zero for LTC records
    std::optional<CanonicalId> subject;   ///< LTCA records only
    std::int64_t issue_time = 0;          ///< Unix seconds

    friend bool operator==(const IssuanceRecord&, const IssuanceRecord&) = default;
};

struct MisbehaviorReport {
    HashedId reported_stc_hash;
    Bytes evidence;
    std::string reporter;
    std::int64_t report_time = 0;  ///< Unix seconds
};

/// Receives every state change so a persistence layer can journal it.
class AuthorityObserver {
public:
    virtual ~AuthorityObserver() = default;
    virtual void on_preregistered(const CanonicalId&) {}
    virtual void on_ltc_issued(const IssuanceRecord&) {}
    virtual void on_stc_issued(const IssuanceRecord&) {}
    virtual void on_banned(const CanonicalId&, std::int64_t /*ban_time*/) {}
    virtual void on_reported(const HashedId&, std::int64_t /*report_time*/) {}
};

struct AuthorityIdentity {
    Certificate cert;
    KeyPair keys;
};

struct TrustConfig {
    std::uint64_t seed = 0;
    std::int64_t not_before = 1'577'836'800;  ///< 2020-01-01
    std::int64_t not_after = 2'208'988'800;   ///< 2040-01-01
    std::int64_t ltc_lifetime_s = 3 * 365 * 86'400;
    std::int64_t stc_lifetime_s = 7 * 86'400;
    HashLength hash_length = HashLength::H8;
    std::string domain = "home";
};

struct TrustDomain {
    TrustConfig config;
    AuthorityIdentity root;
    AuthorityIdentity ltca;
    AuthorityIdentity stca;
    AuthorityIdentity ra;
    AuthorityIdentity ma;

    std::vector<Certificate> authority_certs() const { return {ltca.cert, stca.cert, ra.cert, ma.cert}; }
};

/// Deterministic in config.seed: self-signed root plus four root-issued authority certificates.
TrustDomain bootstrap_trust(const TrustConfig& config);

// ----------------------------------------------------------------------------

enum class LtcVerdict { Accepted, Unknown, Banned };

class Ltca {
public:
    Ltca(AuthorityIdentity identity, const TrustConfig& config, AuthorityObserver* observer = nullptr);

    void preregister(const CanonicalId& id);
    bool is_preregistered(const CanonicalId& id) const;

    /// Throws BannedSubject or NotPreRegistered. `now` is Unix seconds.
    Certificate enroll(const CanonicalId& id, ByteView vehicle_public_key, std::int64_t now);

    /// Answer to an STCA validation request.
    LtcVerdict validate_ltc(const HashedId& ltc_hash) const;

    std::optional<CanonicalId> lookup_canonical(const HashedId& ltc_hash) const;

    /// Returns false if the id was already banned.
    bool ban(const CanonicalId& id, std::int64_t now);
    bool is_banned(const CanonicalId& id) const;
    std::map<CanonicalId, std::int64_t> ban_list() const;

    std::vector<IssuanceRecord> records() const;
    const Certificate& certificate() const noexcept { return identity_.cert; }

    // Journal replay; these do not notify the observer.
    void restore_preregistration(const CanonicalId& id);
    void restore_record(const IssuanceRecord& record);
    void restore_ban(const CanonicalId& id, std::int64_t ban_time);

private:
    mutable std::mutex mutex_;
    AuthorityIdentity identity_;
    TrustConfig config_;
    AuthorityObserver* observer_;
    std::set<CanonicalId> preregistered_;
    std::map<CanonicalId, std::int64_t> banned_;
    std::unordered_map<HashedId, IssuanceRecord> records_;
    std::vector<HashedId> record_order_;
};

class Stca {
public:
    Stca(AuthorityIdentity identity, const TrustConfig& config, Ltca& ltca, AuthorityObserver* observer = nullptr);

    /// Throws BadChain, ExpiredLtc or LtcaRejected. `now` is Unix seconds.
    Certificate authorize(const Certificate& ltc, ByteView vehicle_public_key, std::int64_t now);

    /// Parent LTC hash of an issued STC.
    std::optional<HashedId> lookup_parent(const HashedId& stc_hash) const;

    std::vector<IssuanceRecord> records() const;
    const Certificate& certificate() const noexcept { return identity_.cert; }

    void restore_record(const IssuanceRecord& record);

private:
    Bytes fresh_pseudonym();

    mutable std::mutex mutex_;
    AuthorityIdentity identity_;
    TrustConfig config_;
    Ltca& ltca_;
    AuthorityObserver* observer_;
    Rng rng_;
    std::unordered_map<HashedId, IssuanceRecord> records_;
    std::vector<HashedId> record_order_;
};

struct RevocationOutcome {
    ZeroValueTransaction tx;
    AttachReceipt receipt;
    std::optional<CanonicalId> resolved;
};

class Ra {
public:
    Ra(AuthorityIdentity identity, const TrustConfig& config, Ledger& ledger, Stca& stca, Ltca& ltca);

    /// Signs a payload for `cert_hash` and attaches it at derive_address(cert_hash).
    ZeroValueTransaction publish_revocation(const HashedId& cert_hash, std::int64_t now_ms,
                                            AttachReceipt* receipt = nullptr);

    /// STCA then LTCA lookup; bans the result at the LTCA. Throws ResolutionFailed.
    CanonicalId resolve_identity(const HashedId& stc_hash, std::int64_t now_s);

    /// Publish first, then resolve. A failed resolution is logged and leaves `resolved` empty.
    RevocationOutcome revoke_and_resolve(const HashedId& stc_hash, std::int64_t now_ms);

    const Certificate& certificate() const noexcept { return identity_.cert; }
    std::size_t resolutions() const;

private:
    mutable std::mutex mutex_;
    AuthorityIdentity identity_;
    TrustConfig config_;
    Ledger& ledger_;
    Stca& stca_;
    Ltca& ltca_;
    std::size_t resolutions_ = 0;
};

struct ReportOutcome {
    bool first_report = false;
    std::optional<RevocationOutcome> revocation;
};

/// Detection is external; the MA accepts injected reports and forwards each
/// distinct STC hash to the RA exactly once.
class Ma {
public:
    Ma(AuthorityIdentity identity, Ra& ra, AuthorityObserver* observer = nullptr);

    /// `now_ms` drives the ledger attach time; report.report_time is recorded as given.
    ReportOutcome report_misbehavior(const MisbehaviorReport& report, std::int64_t now_ms);

    bool already_reported(const HashedId& stc_hash) const;
    void restore_report(const HashedId& stc_hash);
    const Certificate& certificate() const noexcept { return identity_.cert; }

private:
    mutable std::mutex mutex_;
    AuthorityIdentity identity_;
    Ra& ra_;
    AuthorityObserver* observer_;
    std::set<HashedId> reported_;
};

/// The five authorities wired together over a shared ledger.
class Vpki {
public:
    Vpki(const TrustConfig& config, Ledger& ledger, AuthorityObserver* observer = nullptr);

    const TrustDomain& trust() const noexcept { return trust_; }
    Ltca& ltca() noexcept { return ltca_; }
    Stca& stca() noexcept { return stca_; }
    Ra& ra() noexcept { return ra_; }
    Ma& ma() noexcept { return ma_; }
    Ledger& ledger() noexcept { return ledger_; }

private:
    TrustDomain trust_;
    Ledger& ledger_;
    Ltca ltca_;
    Stca stca_;
    Ra ra_;
    Ma ma_;
};

}  // namespace vrevoke
