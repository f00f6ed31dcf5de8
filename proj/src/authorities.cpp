/**
 * @file authorities.cpp
 * @brief Enrolment, authorization, revocation publication and identity resolution
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vrevoke/authorities.hpp"

#include "vrevoke/error.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

namespace vrevoke {

namespace {

constexpr std::size_t kPseudonymLength = 16;

AuthorityIdentity make_authority(const TrustConfig& config, std::string_view role, CertKind kind,
                                 const AuthorityIdentity* issuer, std::set<std::string> permissions) {
    auto keys = generate_keypair(fmt::format("vrevoke/{}/{}/{}", config.domain, role, config.seed));
    Certificate tbs;
    tbs.kind = kind;
    tbs.subject_id = to_bytes(fmt::format("{}.{}", role, config.domain));
    tbs.public_key = keys.public_key;
    tbs.not_before = config.not_before;
    tbs.not_after = config.not_after;
    tbs.permissions = std::move(permissions);
    auto cert = issuer ? issue_certificate(std::move(tbs), issuer->keys.private_key, &issuer->cert)
                       : issue_certificate(std::move(tbs), keys.private_key);
    return AuthorityIdentity{std::move(cert), std::move(keys)};
}

}  // namespace

TrustDomain bootstrap_trust(const TrustConfig& config) {
    TrustDomain domain;
    domain.config = config;
    domain.root = make_authority(config, "root", CertKind::Root, nullptr, {"issue-authority"});
    domain.ltca = make_authority(config, "ltca", CertKind::Authority, &domain.root, {"issue-ltc"});
    domain.stca = make_authority(config, "stca", CertKind::Authority, &domain.root, {"issue-stc"});
    domain.ra = make_authority(config, "ra", CertKind::Authority, &domain.root, {"revoke"});
    domain.ma = make_authority(config, "ma", CertKind::Authority, &domain.root, {"report"});
    return domain;
}

// ----------------------------------------------------------------------------
// LTCA
// ----------------------------------------------------------------------------

Ltca::Ltca(AuthorityIdentity identity, const TrustConfig& config, AuthorityObserver* observer)
    : identity_(std::move(identity)), config_(config), observer_(observer) {}

void Ltca::preregister(const CanonicalId& id) {
    std::lock_guard lock(mutex_);
    if (preregistered_.insert(id).second && observer_) observer_->on_preregistered(id);
}

bool Ltca::is_preregistered(const CanonicalId& id) const {
    std::lock_guard lock(mutex_);
    return preregistered_.contains(id);
}

Certificate Ltca::enroll(const CanonicalId& id, ByteView vehicle_public_key, std::int64_t now) {
    std::lock_guard lock(mutex_);
    if (banned_.contains(id)) throw Error(ErrorCode::BannedSubject, id.str());
    if (!preregistered_.contains(id)) throw Error(ErrorCode::NotPreRegistered, id.str());

    Certificate tbs;
    tbs.kind = CertKind::Ltc;
    tbs.subject_id = id.bytes();
    tbs.public_key.assign(vehicle_public_key.begin(), vehicle_public_key.end());
    tbs.not_before = now;
    tbs.not_after = now + config_.ltc_lifetime_s;
    tbs.permissions = {"enrolment"};
    auto ltc = issue_certificate(std::move(tbs), identity_.keys.private_key, &identity_.cert);

    IssuanceRecord record{whole_certificate_hash(ltc, config_.hash_length), HashedId::zero(config_.hash_length), id, now};
    if (observer_) observer_->on_ltc_issued(record);
    if (records_.emplace(record.issued_cert_hash, record).second) record_order_.push_back(record.issued_cert_hash);
    return ltc;
}

LtcVerdict Ltca::validate_ltc(const HashedId& ltc_hash) const {
    std::lock_guard lock(mutex_);
    auto it = records_.find(ltc_hash);
    if (it == records_.end()) return LtcVerdict::Unknown;
    return banned_.contains(*it->second.subject) ? LtcVerdict::Banned : LtcVerdict::Accepted;
}

std::optional<CanonicalId> Ltca::lookup_canonical(const HashedId& ltc_hash) const {
    std::lock_guard lock(mutex_);
    auto it = records_.find(ltc_hash);
    if (it == records_.end()) return std::nullopt;
    return it->second.subject;
}

bool Ltca::ban(const CanonicalId& id, std::int64_t now) {
    std::lock_guard lock(mutex_);
    if (banned_.contains(id)) return false;
    if (observer_) observer_->on_banned(id, now);
    banned_.emplace(id, now);
    return true;
}

bool Ltca::is_banned(const CanonicalId& id) const {
    std::lock_guard lock(mutex_);
    return banned_.contains(id);
}

std::map<CanonicalId, std::int64_t> Ltca::ban_list() const {
    std::lock_guard lock(mutex_);
    return banned_;
}

std::vector<IssuanceRecord> Ltca::records() const {
    std::lock_guard lock(mutex_);
    std::vector<IssuanceRecord> out;
    out.reserve(record_order_.size());
    for (const auto& h : record_order_) out.push_back(records_.at(h));
    return out;
}

void Ltca::restore_preregistration(const CanonicalId& id) {
    std::lock_guard lock(mutex_);
    preregistered_.insert(id);
}

void Ltca::restore_record(const IssuanceRecord& record) {
    std::lock_guard lock(mutex_);
    if (!record.subject) throw Error(ErrorCode::StoreError, "LTC record without canonical id");
    if (records_.emplace(record.issued_cert_hash, record).second) record_order_.push_back(record.issued_cert_hash);
}

void Ltca::restore_ban(const CanonicalId& id, std::int64_t ban_time) {
    std::lock_guard lock(mutex_);
    banned_.emplace(id, ban_time);
}

// ----------------------------------------------------------------------------
// STCA
// ----------------------------------------------------------------------------

Stca::Stca(AuthorityIdentity identity, const TrustConfig& config, Ltca& ltca, AuthorityObserver* observer)
    : identity_(std::move(identity)), config_(config), ltca_(ltca), observer_(observer) {}

Bytes Stca::fresh_pseudonym() {
    // Derived from the record count so a restarted STCA keeps producing new ids.
    Rng rng(mix_seed(mix_seed(config_.seed, 0x5354), record_order_.size()));
    Bytes id(kPseudonymLength);
    for (auto& b : id) b = static_cast<std::uint8_t>(0x80 | (rng.next() & 0x7F));
    return id;
}

Certificate Stca::authorize(const Certificate& ltc, ByteView vehicle_public_key, std::int64_t now) {
    std::lock_guard lock(mutex_);
    if (ltc.kind != CertKind::Ltc || !verify_issued_by(ltc, ltca_.certificate())) {
        throw Error(ErrorCode::BadChain, "LTC does not verify under the LTCA certificate");
    }
    if (!ltc.valid_at(now)) throw Error(ErrorCode::ExpiredLtc, fmt::format("LTC not valid at {}", now));

    auto ltc_hash = whole_certificate_hash(ltc, config_.hash_length);
    switch (ltca_.validate_ltc(ltc_hash)) {
        case LtcVerdict::Accepted: break;
        case LtcVerdict::Banned: throw Error(ErrorCode::LtcaRejected, "enrolment holder is banned");
        case LtcVerdict::Unknown: throw Error(ErrorCode::LtcaRejected, "LTC unknown to the LTCA");
    }

    Certificate tbs;
    tbs.kind = CertKind::Stc;
    tbs.subject_id = fresh_pseudonym();
    tbs.public_key.assign(vehicle_public_key.begin(), vehicle_public_key.end());
    tbs.not_before = now;
    tbs.not_after = now + config_.stc_lifetime_s;
    tbs.permissions = {"cam", "denm"};
    auto stc = issue_certificate(std::move(tbs), identity_.keys.private_key, &identity_.cert);

    IssuanceRecord record{whole_certificate_hash(stc, config_.hash_length), ltc_hash, std::nullopt, now};
    if (observer_) observer_->on_stc_issued(record);
    if (records_.emplace(record.issued_cert_hash, record).second) record_order_.push_back(record.issued_cert_hash);
    return stc;
}

std::optional<HashedId> Stca::lookup_parent(const HashedId& stc_hash) const {
    std::lock_guard lock(mutex_);
    auto it = records_.find(stc_hash);
    if (it == records_.end()) return std::nullopt;
    return it->second.parent_ref;
}

std::vector<IssuanceRecord> Stca::records() const {
    std::lock_guard lock(mutex_);
    std::vector<IssuanceRecord> out;
    out.reserve(record_order_.size());
    for (const auto& h : record_order_) out.push_back(records_.at(h));
    return out;
}

void Stca::restore_record(const IssuanceRecord& record) {
    std::lock_guard lock(mutex_);
    if (record.subject) throw Error(ErrorCode::StoreError, "STC record must not carry a canonical id");
    if (records_.emplace(record.issued_cert_hash, record).second) record_order_.push_back(record.issued_cert_hash);
}

// ----------------------------------------------------------------------------
// RA
// ----------------------------------------------------------------------------

Ra::Ra(AuthorityIdentity identity, const TrustConfig& config, Ledger& ledger, Stca& stca, Ltca& ltca)
    : identity_(std::move(identity)), config_(config), ledger_(ledger), stca_(stca), ltca_(ltca) {}

ZeroValueTransaction Ra::publish_revocation(const HashedId& cert_hash, std::int64_t now_ms, AttachReceipt* receipt) {
    std::lock_guard lock(mutex_);
    auto payload =
        RevocationPayload::make(cert_hash, to_unix_seconds(now_ms), identity_.cert, identity_.keys.private_key);
    auto tx = ZeroValueTransaction::make(derive_address(cert_hash), payload.encode(), now_ms);
    auto r = ledger_.attach(tx);
    if (receipt) *receipt = r;
    return tx;
}

CanonicalId Ra::resolve_identity(const HashedId& stc_hash, std::int64_t now_s) {
    std::lock_guard lock(mutex_);
    ++resolutions_;
    auto ltc_hash = stca_.lookup_parent(stc_hash);
    if (!ltc_hash) throw Error(ErrorCode::ResolutionFailed, fmt::format("STCA has no record of {}", stc_hash.hex()));
    auto canonical = ltca_.lookup_canonical(*ltc_hash);
    if (!canonical) throw Error(ErrorCode::ResolutionFailed, fmt::format("LTCA has no record of {}", ltc_hash->hex()));
    ltca_.ban(*canonical, now_s);
    return *canonical;
}

RevocationOutcome Ra::revoke_and_resolve(const HashedId& stc_hash, std::int64_t now_ms) {
    AttachReceipt receipt;
    auto tx = publish_revocation(stc_hash, now_ms, &receipt);
    RevocationOutcome outcome{std::move(tx), receipt, std::nullopt};
    try {
        outcome.resolved = resolve_identity(stc_hash, to_unix_seconds(now_ms));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ResolutionFailed) throw;
        spdlog::warn("revocation of {} published but identity not resolved: {}", stc_hash.hex(), e.what());
    }
    return outcome;
}

std::size_t Ra::resolutions() const {
    std::lock_guard lock(mutex_);
    return resolutions_;
}

// ----------------------------------------------------------------------------
// MA
// ----------------------------------------------------------------------------

Ma::Ma(AuthorityIdentity identity, Ra& ra, AuthorityObserver* observer)
    : identity_(std::move(identity)), ra_(ra), observer_(observer) {}

ReportOutcome Ma::report_misbehavior(const MisbehaviorReport& report, std::int64_t now_ms) {
    std::lock_guard lock(mutex_);
    ReportOutcome outcome;
    if (reported_.contains(report.reported_stc_hash)) return outcome;
    if (observer_) observer_->on_reported(report.reported_stc_hash, report.report_time);
    reported_.insert(report.reported_stc_hash);
    outcome.first_report = true;
    outcome.revocation = ra_.revoke_and_resolve(report.reported_stc_hash, now_ms);
    return outcome;
}

bool Ma::already_reported(const HashedId& stc_hash) const {
    std::lock_guard lock(mutex_);
    return reported_.contains(stc_hash);
}

void Ma::restore_report(const HashedId& stc_hash) {
    std::lock_guard lock(mutex_);
    reported_.insert(stc_hash);
}

// ----------------------------------------------------------------------------

Vpki::Vpki(const TrustConfig& config, Ledger& ledger, AuthorityObserver* observer)
    : trust_(bootstrap_trust(config)),
      ledger_(ledger),
      ltca_(trust_.ltca, config, observer),
      stca_(trust_.stca, config, ltca_, observer),
      ra_(trust_.ra, config, ledger, stca_, ltca_),
      ma_(trust_.ma, ra_, observer) {}

}  // namespace vrevoke
