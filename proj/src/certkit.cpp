/**
 * @file certkit.cpp
 * @brief Certificate encoding, hashing and issuance
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vrevoke/certkit.hpp"

#include "vrevoke/error.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace vrevoke {

HashLength hash_length_from(std::size_t n) {
    switch (n) {
        case 3: return HashLength::H3;
        case 8: return HashLength::H8;
        case 10: return HashLength::H10;
        default: throw Error(ErrorCode::InvalidArgument, fmt::format("HashedId length must be 3, 8 or 10, got {}", n));
    }
}

HashedId::HashedId(Bytes bytes) : bytes_(std::move(bytes)) { hash_length_from(bytes_.size()); }

HashedId HashedId::from_hex(std::string_view hex) { return HashedId(vrevoke::from_hex(hex)); }

HashedId HashedId::zero(HashLength length) { return HashedId(Bytes(static_cast<std::size_t>(length), 0)); }

HashedId HashedId::from_digest(const Sha256Digest& digest, HashLength length) {
    auto n = static_cast<std::size_t>(length);
    return HashedId(Bytes(digest.end() - static_cast<std::ptrdiff_t>(n), digest.end()));
}

bool HashedId::is_zero() const noexcept {
    return std::all_of(bytes_.begin(), bytes_.end(), [](auto b) { return b == 0; });
}

HashedId hash_bytes(ByteView data, HashLength length) { return HashedId::from_digest(sha256(data), length); }

CanonicalId::CanonicalId(std::string id) : id_(std::move(id)) {
    if (id_.empty()) throw Error(ErrorCode::InvalidArgument, "canonical id must be non-empty");
    for (unsigned char c : id_) {
        if (c < 0x20 || c > 0x7E) {
            throw Error(ErrorCode::InvalidArgument, "canonical id must be printable ASCII");
        }
    }
}

std::string_view to_string(CertKind kind) noexcept {
    switch (kind) {
        case CertKind::Root: return "root";
        case CertKind::Authority: return "authority";
        case CertKind::Ltc: return "ltc";
        case CertKind::Stc: return "stc";
    }
    return "?";
}

Bytes canonical_encode(const Certificate& cert) {
    ByteWriter w;
    w.put_u8(static_cast<std::uint8_t>(cert.kind));
    w.put_field(cert.subject_id);
    w.put_field(cert.public_key);
    w.put_i64(cert.not_before);
    w.put_i64(cert.not_after);
    if (cert.permissions.size() > kMaxFieldLength) {
        throw Error(ErrorCode::EncodingOverflow, "too many permissions");
    }
    w.put_u16(static_cast<std::uint16_t>(cert.permissions.size()));
    for (const auto& p : cert.permissions) {
        w.put_field(ByteView(reinterpret_cast<const std::uint8_t*>(p.data()), p.size()));
    }
    w.put_field(cert.issuer_hash.bytes());
    w.put_field(cert.signature);
    return std::move(w).bytes();
}

Certificate canonical_decode(ByteView bytes) {
    ByteReader r(bytes);
    Certificate cert;
    auto kind = r.get_u8();
    if (kind > static_cast<std::uint8_t>(CertKind::Stc)) {
        throw Error(ErrorCode::DecodeError, fmt::format("unknown certificate kind {}", kind));
    }
    cert.kind = static_cast<CertKind>(kind);
    cert.subject_id = r.get_field();
    cert.public_key = r.get_field();
    cert.not_before = r.get_i64();
    cert.not_after = r.get_i64();
    auto n_permissions = r.get_u16();
    for (std::uint16_t i = 0; i < n_permissions; ++i) {
        auto p = r.get_field();
        if (!cert.permissions.emplace(p.begin(), p.end()).second) {
            throw Error(ErrorCode::DecodeError, "duplicate permission");
        }
    }
    try {
        cert.issuer_hash = HashedId(r.get_field());
    } catch (const Error& e) {
        if (e.code() != ErrorCode::InvalidArgument) throw;
        throw Error(ErrorCode::DecodeError, "bad issuer hash length");
    }
    cert.signature = r.get_field();
    r.expect_end();
    return cert;
}

Bytes to_be_signed(const Certificate& cert) {
    Certificate tbs = cert;
    tbs.signature.clear();
    return canonical_encode(tbs);
}

HashedId whole_certificate_hash(const Certificate& cert, HashLength length) {
    return hash_bytes(canonical_encode(cert), length);
}

Certificate issue_certificate(Certificate tbs, ByteView issuer_private_key, const Certificate* issuer_cert) {
    if (tbs.not_before >= tbs.not_after) {
        throw Error(ErrorCode::InvalidArgument, "validity interval is empty");
    }
    tbs.issuer_hash = issuer_cert ? whole_certificate_hash(*issuer_cert) : HashedId::zero();
    tbs.signature = sign(issuer_private_key, to_be_signed(tbs));
    return tbs;
}

bool verify_issued_by(const Certificate& cert, const Certificate& issuer) noexcept {
    try {
        bool self_signed = cert.kind == CertKind::Root;
        if (self_signed) {
            if (!cert.issuer_hash.is_zero() || !(cert == issuer)) return false;
        } else if (cert.issuer_hash != whole_certificate_hash(issuer)) {
            return false;
        }
        return verify(issuer.public_key, to_be_signed(cert), cert.signature);
    } catch (...) {
        return false;
    }
}

}  // namespace vrevoke

std::size_t std::hash<vrevoke::HashedId>::operator()(const vrevoke::HashedId& id) const noexcept {
    std::size_t h = 0;
    for (auto b : id.bytes()) h = (h << 8) ^ (h >> 56) ^ b;
    return h;
}
