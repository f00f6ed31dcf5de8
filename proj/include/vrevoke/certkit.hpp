/**
 * @file certkit.hpp
 * @brief Certificate model, canonical encoding, signatures and whole-certificate hashing
 *
 * Certificates use a compact deterministic encoding in place of the IEEE 1609.2
 * COER form: a 1-byte kind tag followed by the fields in declaration order,
 * variable-length fields prefixed with a 2-byte big-endian length and
 * timestamps as 8-byte big-endian integers. The whole-certificate hash is
 * SHA-256 over that encoding, truncated to its low-order 3, 8 or 10 bytes.
 *
 * Signatures are Ed25519 (OpenSSL). Ed25519 is deterministic, which keeps
 * seeded runs reproducible byte for byte.
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vrevoke/bytes.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>

namespace vrevoke {

using Sha256Digest = std::array<std::uint8_t, 32>;

Sha256Digest sha256(ByteView data);

// ----------------------------------------------------------------------------
// Keys and signatures
// ----------------------------------------------------------------------------

struct KeyPair {
    Bytes public_key;
    Bytes private_key;
};

/// Same seed gives the same keypair; no seed draws fresh key material from the OS RNG.
KeyPair generate_keypair(std::optional<ByteView> seed = std::nullopt);
KeyPair generate_keypair(std::string_view seed);

Bytes sign(ByteView private_key, ByteView message);

/// Never throws; malformed keys or signatures simply fail verification.
bool verify(ByteView public_key, ByteView message, ByteView signature) noexcept;

// ----------------------------------------------------------------------------
// Identifiers
// ----------------------------------------------------------------------------

enum class HashLength : std::uint8_t { H3 = 3, H8 = 8, H10 = 10 };

/// Throws InvalidArgument for anything other than 3, 8 or 10.
HashLength hash_length_from(std::size_t n);

/// Truncated whole-certificate hash. Equality is byte-wise.
class HashedId {
public:
    HashedId() : bytes_(8, 0) {}
    explicit HashedId(Bytes bytes);

    static HashedId from_hex(std::string_view hex);
    static HashedId zero(HashLength length = HashLength::H8);
    /// Low-order `length` bytes of the digest.
    static HashedId from_digest(const Sha256Digest& digest, HashLength length);

    HashLength length() const noexcept { return static_cast<HashLength>(bytes_.size()); }
    std::size_t size() const noexcept { return bytes_.size(); }
    const Bytes& bytes() const noexcept { return bytes_; }
    std::string hex() const { return to_hex(bytes_); }
    bool is_zero() const noexcept;

    friend bool operator==(const HashedId&, const HashedId&) = default;
    friend auto operator<=>(const HashedId&, const HashedId&) = default;

private:
    Bytes bytes_;
};

/// SHA-256 of `data`, truncated.
HashedId hash_bytes(ByteView data, HashLength length = HashLength::H8);

/// Permanent vehicle identity known to the LTCA. Restricted to printable
/// ASCII (0x20..0x7E) so that pseudonym ids, drawn from 0x80..0xFF, can never
/// share a byte with it.
class CanonicalId {
public:
    explicit CanonicalId(std::string id);

    const std::string& str() const noexcept { return id_; }
    Bytes bytes() const { return to_bytes(id_); }

    friend bool operator==(const CanonicalId&, const CanonicalId&) = default;
    friend auto operator<=>(const CanonicalId&, const CanonicalId&) = default;

private:
    std::string id_;
};

// ----------------------------------------------------------------------------
// Certificates
// ----------------------------------------------------------------------------

enum class CertKind : std::uint8_t { Root = 0, Authority = 1, Ltc = 2, Stc = 3 };

std::string_view to_string(CertKind kind) noexcept;

struct Certificate {
    CertKind kind = CertKind::Stc;
    Bytes subject_id;
    Bytes public_key;
    std::int64_t not_before = 0;  ///< Unix seconds, inclusive
    std::int64_t not_after = 0;   ///< Unix seconds, exclusive
    std::set<std::string> permissions;
    HashedId issuer_hash = HashedId::zero();  ///< HashedId8 of the issuer, zero for a self-signed root
    Bytes signature;

    bool valid_at(std::int64_t unix_seconds) const noexcept {
        return not_before <= unix_seconds && unix_seconds < not_after;
    }

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Throws EncodingOverflow if a variable-length field exceeds 65535 bytes.
Bytes canonical_encode(const Certificate& cert);
/// Inverse of canonical_encode; rejects truncated input and trailing bytes.
Certificate canonical_decode(ByteView bytes);
/// The encoding with an empty signature field; this is what issuers sign.
Bytes to_be_signed(const Certificate& cert);

HashedId whole_certificate_hash(const Certificate& cert, HashLength length = HashLength::H8);

/// Fills issuer_hash and signature. Pass no issuer to self-sign a root.
/// Throws InvalidArgument if not_before >= not_after.
Certificate issue_certificate(Certificate tbs, ByteView issuer_private_key,
                              const Certificate* issuer_cert = nullptr);

/// issuer_hash matches the issuer and the signature verifies under its key.
/// A root is checked against itself.
bool verify_issued_by(const Certificate& cert, const Certificate& issuer) noexcept;

}  // namespace vrevoke

template <>
struct std::hash<vrevoke::HashedId> {
    std::size_t operator()(const vrevoke::HashedId& id) const noexcept;
};

template <>
struct std::hash<vrevoke::CanonicalId> {
    std::size_t operator()(const vrevoke::CanonicalId& id) const noexcept {
        return std::hash<std::string>{}(id.str());
    }
};
