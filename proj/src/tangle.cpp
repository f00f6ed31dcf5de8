/**
 * @file tangle.cpp
 * @brief Tryte encoding, revocation payloads and the zero-value ledger
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vrevoke/tangle.hpp"

#include "vrevoke/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

namespace vrevoke {

std::string byte_to_trytes(std::uint8_t b) {
    return {kTryteAlphabet[b % 27], kTryteAlphabet[b / 27]};
}

std::uint8_t trytes_to_byte(std::string_view pair) {
    auto lo = pair.size() == 2 ? kTryteAlphabet.find(pair[0]) : std::string_view::npos;
    auto hi = pair.size() == 2 ? kTryteAlphabet.find(pair[1]) : std::string_view::npos;
    if (lo == std::string_view::npos || hi == std::string_view::npos || lo + 27 * hi > 255) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("'{}' is not a byte tryte pair", pair));
    }
    return static_cast<std::uint8_t>(lo + 27 * hi);
}

TryteAddress::TryteAddress(std::string trytes) : trytes_(std::move(trytes)) {
    if (trytes_.size() != kAddressLength) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("address must be {} trytes, got {}", kAddressLength, trytes_.size()));
    }
    if (trytes_.find_first_not_of(kTryteAlphabet) != std::string::npos) {
        throw Error(ErrorCode::InvalidArgument, "address contains a non-tryte character");
    }
}

TryteAddress derive_address(const HashedId& hash) {
    std::string trytes;
    trytes.reserve(kAddressLength);
    for (auto b : hash.bytes()) trytes += byte_to_trytes(b);
    trytes.resize(kAddressLength, kTryteAlphabet[0]);
    return TryteAddress(std::move(trytes));
}

// ----------------------------------------------------------------------------

Bytes RevocationPayload::signed_bytes() const {
    ByteWriter w;
    w.put_u8(static_cast<std::uint8_t>(revoked_hash.size()));
    w.put_raw(revoked_hash.bytes());
    w.put_i64(revocation_time);
    w.put_raw(ra_cert_hash.bytes());
    return std::move(w).bytes();
}

Bytes RevocationPayload::encode() const {
    ByteWriter w;
    w.put_raw(signed_bytes());
    w.put_field(signature);
    return std::move(w).bytes();
}

RevocationPayload RevocationPayload::decode(ByteView bytes) {
    ByteReader r(bytes);
    RevocationPayload p;
    try {
        auto n = r.get_u8();
        p.revoked_hash = HashedId(r.get_raw(n));
        p.revocation_time = r.get_i64();
        p.ra_cert_hash = HashedId(r.get_raw(8));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::InvalidArgument) throw;
        throw Error(ErrorCode::DecodeError, "bad revoked hash length");
    }
    p.signature = r.get_field();
    r.expect_end();
    return p;
}

RevocationPayload RevocationPayload::make(const HashedId& revoked_hash, std::int64_t revocation_time,
                                          const Certificate& ra_cert, ByteView ra_private_key) {
    RevocationPayload p;
    p.revoked_hash = revoked_hash;
    p.revocation_time = revocation_time;
    p.ra_cert_hash = whole_certificate_hash(ra_cert);
    p.signature = sign(ra_private_key, p.signed_bytes());
    return p;
}

bool RevocationPayload::verify(const Certificate& ra_cert) const noexcept {
    try {
        return ra_cert_hash == whole_certificate_hash(ra_cert) &&
               vrevoke::verify(ra_cert.public_key, signed_bytes(), signature);
    } catch (...) {
        return false;
    }
}

ZeroValueTransaction ZeroValueTransaction::make(TryteAddress address, Bytes payload, std::int64_t attach_time_ms) {
    auto id = hash_bytes(payload);
    return ZeroValueTransaction{std::move(address), std::move(payload), attach_time_ms, std::move(id)};
}

// ----------------------------------------------------------------------------

LatencyModel LatencyModel::constant(double ms) {
    if (!(ms >= 0.0)) throw Error(ErrorCode::InvalidArgument, "constant latency must be >= 0");
    LatencyModel m;
    m.kind = Kind::Constant;
    m.constant_ms = ms;
    return m;
}

LatencyModel LatencyModel::uniform(double lo_ms, double hi_ms) {
    if (!(lo_ms >= 0.0 && hi_ms >= lo_ms)) throw Error(ErrorCode::InvalidArgument, "uniform latency needs 0 <= lo <= hi");
    LatencyModel m;
    m.kind = Kind::Uniform;
    m.lo_ms = lo_ms;
    m.hi_ms = hi_ms;
    return m;
}

LatencyModel LatencyModel::lognormal(double mu, double sigma, double cap_ms) {
    if (!(sigma >= 0.0 && cap_ms >= 0.0) || !std::isfinite(mu)) {
        throw Error(ErrorCode::InvalidArgument, "log-normal latency needs sigma >= 0 and cap >= 0");
    }
    LatencyModel m;
    m.kind = Kind::LogNormal;
    m.mu = mu;
    m.sigma = sigma;
    m.cap_ms = cap_ms;
    return m;
}

LatencyModel LatencyModel::fit_lognormal(double mean_ms, double p95_ms, double cap_ms) {
    // mean = exp(mu + s^2/2), p95 = exp(mu + z*s)  =>  s^2/2 - z*s + ln(p95/mean) = 0
    constexpr double z95 = 1.6448536269514722;
    if (!(mean_ms > 0.0 && p95_ms > mean_ms)) {
        throw Error(ErrorCode::InvalidArgument, "log-normal fit needs 0 < mean < p95");
    }
    double gap = std::log(p95_ms / mean_ms);
    double disc = z95 * z95 - 2.0 * gap;
    if (disc < 0.0) throw Error(ErrorCode::InvalidArgument, "p95/mean ratio too large for a log-normal");
    double sigma = z95 - std::sqrt(disc);
    return lognormal(std::log(mean_ms) - sigma * sigma / 2.0, sigma, cap_ms);
}

double LatencyModel::sample(Rng& rng) const {
    switch (kind) {
        case Kind::Zero: return 0.0;
        case Kind::Constant: return constant_ms;
        case Kind::Uniform: return rng.uniform(lo_ms, hi_ms);
        case Kind::LogNormal: return std::min(cap_ms, std::exp(mu + sigma * rng.normal()));
    }
    return 0.0;
}

std::string LatencyModel::describe() const {
    switch (kind) {
        case Kind::Zero: return "zero";
        case Kind::Constant: return fmt::format("constant({} ms)", constant_ms);
        case Kind::Uniform: return fmt::format("uniform({} ms, {} ms)", lo_ms, hi_ms);
        case Kind::LogNormal: return fmt::format("lognormal(mu={}, sigma={}, cap={} ms)", mu, sigma, cap_ms);
    }
    return "?";
}

// ----------------------------------------------------------------------------

std::string format_ledger_line(const LedgerEntry& entry) {
    return fmt::format("{}\t{}\t{}\t{}\t{}", entry.tx.address.str(), entry.tx.attach_time_ms, entry.queryable_time_ms,
                       entry.tx.tx_id.hex(), to_hex(entry.tx.payload));
}

LedgerEntry parse_ledger_line(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        auto tab = line.find('\t', start);
        fields.push_back(line.substr(start, tab - start));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
    }
    if (fields.size() != 5) {
        throw Error(ErrorCode::DecodeError, fmt::format("ledger line has {} fields, expected 5", fields.size()));
    }
    auto to_i64 = [](std::string_view s) {
        std::size_t used = 0;
        std::int64_t v = std::stoll(std::string(s), &used);
        if (used != s.size()) throw Error(ErrorCode::DecodeError, "bad integer in ledger line");
        return v;
    };
    try {
        LedgerEntry e{ZeroValueTransaction{TryteAddress(std::string(fields[0])), from_hex(fields[4]), to_i64(fields[1]),
                                           HashedId::from_hex(fields[3])},
                      to_i64(fields[2])};
        if (e.tx.tx_id != hash_bytes(e.tx.payload)) throw Error(ErrorCode::DecodeError, "tx_id does not match payload");
        return e;
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::DecodeError, "bad integer in ledger line");
    } catch (const Error& e) {
        if (e.code() == ErrorCode::DecodeError) throw;
        throw Error(ErrorCode::DecodeError, e.what());
    }
}

Ledger::Ledger(LatencyModel latency, std::uint64_t seed) : latency_(latency), rng_(seed) {}

AttachReceipt Ledger::attach(const ZeroValueTransaction& tx) {
    RevocationPayload::decode(tx.payload);
    if (tx.tx_id != hash_bytes(tx.payload)) throw Error(ErrorCode::DecodeError, "tx_id does not match payload");
    std::unique_lock lock(mutex_);
    auto delay = std::llround(latency_.sample(rng_));
    LedgerEntry entry{tx, tx.attach_time_ms + delay};
    // Observer runs under the lock so journal order matches attach order.
    if (observer_) observer_(entry);
    insert_locked(entry);
    return AttachReceipt{entry.tx.tx_id, entry.queryable_time_ms};
}

void Ledger::restore(const LedgerEntry& entry) {
    std::unique_lock lock(mutex_);
    insert_locked(entry);
}

void Ledger::insert_locked(LedgerEntry entry) {
    auto key = entry.tx.address.str();
    node_[key].push_back(Stored{next_sequence_++, std::move(entry)});
    ++node_count_;
}

std::vector<ZeroValueTransaction> Ledger::find_transactions(const TryteAddress& address, std::int64_t at_ms) const {
    queries_.fetch_add(1, std::memory_order_relaxed);
    std::vector<ZeroValueTransaction> out;
    std::shared_lock lock(mutex_);
    for (const Index* layer : {&permanode_, &node_}) {
        auto it = layer->find(address.str());
        if (it == layer->end()) continue;
        for (const auto& s : it->second) {
            if (s.entry.queryable_time_ms <= at_ms) out.push_back(s.entry.tx);
        }
    }
    return out;
}

void Ledger::snapshot_compact() {
    std::unique_lock lock(mutex_);
    for (auto& [address, list] : node_) {
        auto& archived = permanode_[address];
        archived.insert(archived.end(), std::make_move_iterator(list.begin()), std::make_move_iterator(list.end()));
    }
    node_.clear();
    node_count_ = 0;
}

std::vector<LedgerEntry> Ledger::entries() const {
    std::vector<Stored> all;
    {
        std::shared_lock lock(mutex_);
        for (const Index* layer : {&permanode_, &node_}) {
            for (const auto& [address, list] : *layer) all.insert(all.end(), list.begin(), list.end());
        }
    }
    std::sort(all.begin(), all.end(), [](const Stored& a, const Stored& b) { return a.sequence < b.sequence; });
    std::vector<LedgerEntry> out;
    out.reserve(all.size());
    for (auto& s : all) out.push_back(std::move(s.entry));
    return out;
}

std::size_t Ledger::size() const {
    std::shared_lock lock(mutex_);
    return next_sequence_;
}

std::size_t Ledger::node_size() const {
    std::shared_lock lock(mutex_);
    return node_count_;
}

void Ledger::dump(std::ostream& out) const {
    for (const auto& e : entries()) out << format_ledger_line(e) << '\n';
}

void Ledger::load(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        restore(parse_ledger_line(line));
    }
}

void Ledger::set_attach_observer(AttachObserver observer) {
    std::unique_lock lock(mutex_);
    observer_ = std::move(observer);
}

}  // namespace vrevoke
