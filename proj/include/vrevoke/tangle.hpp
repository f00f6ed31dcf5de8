/**
 * @file tangle.hpp
 * @brief Tryte addresses, revocation payloads and the address-indexed zero-value ledger
 *
 * The ledger is a single-process, append-only store standing in for a Tangle
 * node plus permanode. Transactions become visible at attach time plus a
 * latency sampled from a LatencyModel; all times are virtual milliseconds
 * supplied by the caller.
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vrevoke/certkit.hpp"
#include "vrevoke/random.hpp"

#include <atomic>
#include <functional>
#include <iosfwd>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vrevoke {

// ----------------------------------------------------------------------------
// Trytes
// ----------------------------------------------------------------------------

inline constexpr std::string_view kTryteAlphabet = "9ABCDEFGHIJKLMNOPQRSTUVWXYZ";
inline constexpr std::size_t kAddressLength = 81;

/// First tryte is b mod 27, second is b / 27.
std::string byte_to_trytes(std::uint8_t b);

/// Inverse of byte_to_trytes; throws InvalidArgument for pairs outside the 0..255 image.
std::uint8_t trytes_to_byte(std::string_view pair);

class TryteAddress {
public:
    /// Throws InvalidArgument unless `trytes` is 81 characters from kTryteAlphabet.
    explicit TryteAddress(std::string trytes);

    const std::string& str() const noexcept { return trytes_; }

    friend bool operator==(const TryteAddress&, const TryteAddress&) = default;
    friend auto operator<=>(const TryteAddress&, const TryteAddress&) = default;

private:
    std::string trytes_;
};

/// Tryte-encodes every hash byte in order and right-pads with '9' to 81 trytes.
/// No checksum is appended.
TryteAddress derive_address(const HashedId& hash);

// ----------------------------------------------------------------------------
// Revocation payload and transactions
// ----------------------------------------------------------------------------

struct RevocationPayload {
    HashedId revoked_hash;
    std::int64_t revocation_time = 0;  ///< Unix seconds
    HashedId ra_cert_hash;             ///< HashedId8 of the signing RA certificate
    Bytes signature;

    /// revoked_hash || revocation_time || ra_cert_hash
    Bytes signed_bytes() const;
    Bytes encode() const;
    static RevocationPayload decode(ByteView bytes);

    static RevocationPayload make(const HashedId& revoked_hash, std::int64_t revocation_time,
                                  const Certificate& ra_cert, ByteView ra_private_key);

    /// Signature verifies under `ra_cert` and ra_cert_hash names that certificate.
    bool verify(const Certificate& ra_cert) const noexcept;

    friend bool operator==(const RevocationPayload&, const RevocationPayload&) = default;
};

/// Data-only ledger entry; there is no value field.
struct ZeroValueTransaction {
    TryteAddress address;
    Bytes payload;
    std::int64_t attach_time_ms = 0;
    HashedId tx_id;  ///< HashedId8 of the payload bytes

    static ZeroValueTransaction make(TryteAddress address, Bytes payload, std::int64_t attach_time_ms);

    friend bool operator==(const ZeroValueTransaction&, const ZeroValueTransaction&) = default;
};

// ----------------------------------------------------------------------------
// Latency models
// ----------------------------------------------------------------------------

struct LatencyModel {
    enum class Kind { Zero, Constant, Uniform, LogNormal };

    Kind kind = Kind::Zero;
    double constant_ms = 0.0;
    double lo_ms = 0.0;
    double hi_ms = 0.0;
    double mu = 0.0;     ///< log-space mean of the delay in ms
    double sigma = 0.0;  ///< log-space standard deviation
    double cap_ms = 0.0;

    static LatencyModel zero() { return {}; }
    static LatencyModel constant(double ms);
    static LatencyModel uniform(double lo_ms, double hi_ms);
    static LatencyModel lognormal(double mu, double sigma, double cap_ms);

    /// Log-normal whose mean and 95th percentile (both in ms) match the given
    /// values. Of the two roots the narrower distribution is taken. Throws
    /// InvalidArgument when no log-normal has that mean/p95 pair.
    static LatencyModel fit_lognormal(double mean_ms, double p95_ms, double cap_ms);

    /// Always >= 0; log-normal draws are clamped at cap_ms.
    double sample(Rng& rng) const;

    std::string describe() const;

    friend bool operator==(const LatencyModel&, const LatencyModel&) = default;
};

// ----------------------------------------------------------------------------
// Ledger
// ----------------------------------------------------------------------------

struct AttachReceipt {
    HashedId tx_id;
    std::int64_t queryable_time_ms = 0;
};

struct LedgerEntry {
    ZeroValueTransaction tx;
    std::int64_t queryable_time_ms = 0;

    friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

/// Tab-separated: address, attach_time_ms, queryable_time_ms, tx_id hex, payload hex.
std::string format_ledger_line(const LedgerEntry& entry);
LedgerEntry parse_ledger_line(std::string_view line);

/// Thread-safe. Per-address reads see a prefix of the attach order.
class Ledger {
public:
    using AttachObserver = std::function<void(const LedgerEntry&)>;

    explicit Ledger(LatencyModel latency = LatencyModel::zero(), std::uint64_t seed = 0);

    Ledger(const Ledger&) = delete;
    Ledger& operator=(const Ledger&) = delete;

    /// Validates that the payload parses (DecodeError otherwise); signatures are not checked here.
    AttachReceipt attach(const ZeroValueTransaction& tx);

    /// Inserts an entry with a known queryable time (journal replay, dump restore).
    void restore(const LedgerEntry& entry);

    /// Transactions at `address` with queryable_time <= at_ms, in attach order.
    std::vector<ZeroValueTransaction> find_transactions(const TryteAddress& address, std::int64_t at_ms) const;

    /// Flushes the node layer into the permanode store and resets the node, the
    /// way a Tangle snapshot drops zero-value transactions. Query results do not change.
    void snapshot_compact();

    void dump(std::ostream& out) const;
    void load(std::istream& in);

    /// Every entry in attach order.
    std::vector<LedgerEntry> entries() const;
    std::size_t size() const;
    std::size_t node_size() const;

    std::uint64_t query_count() const noexcept { return queries_.load(std::memory_order_relaxed); }

    void set_attach_observer(AttachObserver observer);

private:
    struct Stored {
        std::uint64_t sequence;
        LedgerEntry entry;
    };
    using Index = std::unordered_map<std::string, std::vector<Stored>>;

    void insert_locked(LedgerEntry entry);

    mutable std::shared_mutex mutex_;
    LatencyModel latency_;
    Rng rng_;
    Index node_;
    Index permanode_;
    std::uint64_t next_sequence_ = 0;
    std::size_t node_count_ = 0;
    AttachObserver observer_;
    mutable std::atomic<std::uint64_t> queries_{0};
};

}  // namespace vrevoke

template <>
struct std::hash<vrevoke::TryteAddress> {
    std::size_t operator()(const vrevoke::TryteAddress& a) const noexcept {
        return std::hash<std::string>{}(a.str());
    }
};
