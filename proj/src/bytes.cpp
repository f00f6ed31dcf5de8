/**
 * @file bytes.cpp
 * @brief Hex conversion and byte codecs
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vrevoke/bytes.hpp"

#include "vrevoke/error.hpp"

#include <fmt/format.h>

namespace vrevoke {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::EncodingOverflow: return "EncodingOverflow";
        case ErrorCode::DecodeError: return "DecodeError";
        case ErrorCode::BannedSubject: return "BannedSubject";
        case ErrorCode::NotPreRegistered: return "NotPreRegistered";
        case ErrorCode::LtcaRejected: return "LtcaRejected";
        case ErrorCode::ExpiredLtc: return "ExpiredLtc";
        case ErrorCode::BadChain: return "BadChain";
        case ErrorCode::ResolutionFailed: return "ResolutionFailed";
        case ErrorCode::NoCredential: return "NoCredential";
        case ErrorCode::ExpiredCredential: return "ExpiredCredential";
        case ErrorCode::NeighborUnreachable: return "NeighborUnreachable";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
        case ErrorCode::EmptySamples: return "EmptySamples";
        case ErrorCode::StoreError: return "StoreError";
    }
    return "Unknown";
}

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string to_hex(ByteView bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0F]);
    }
    return out;
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("odd-length hex string ({} chars)", hex.size()));
    }
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        int hi = hex_value(hex[i]);
        int lo = hex_value(hex[i + 1]);
        if (hi < 0 || lo < 0) {
            throw Error(ErrorCode::InvalidArgument, fmt::format("non-hex character at offset {}", i));
        }
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

Bytes to_bytes(std::string_view text) { return Bytes(text.begin(), text.end()); }

void ByteWriter::put_u8(std::uint8_t value) { buffer_.push_back(value); }

void ByteWriter::put_u16(std::uint16_t value) {
    buffer_.push_back(static_cast<std::uint8_t>(value >> 8));
    buffer_.push_back(static_cast<std::uint8_t>(value));
}

void ByteWriter::put_u64(std::uint64_t value) {
    for (int shift = 56; shift >= 0; shift -= 8) {
        buffer_.push_back(static_cast<std::uint8_t>(value >> shift));
    }
}

void ByteWriter::put_raw(ByteView bytes) { buffer_.insert(buffer_.end(), bytes.begin(), bytes.end()); }

void ByteWriter::put_field(ByteView bytes) {
    if (bytes.size() > kMaxFieldLength) {
        throw Error(ErrorCode::EncodingOverflow,
                    fmt::format("field of {} bytes exceeds {}", bytes.size(), kMaxFieldLength));
    }
    put_u16(static_cast<std::uint16_t>(bytes.size()));
    put_raw(bytes);
}

ByteView ByteReader::take(std::size_t count) {
    if (bytes_.size() - offset_ < count) {
        throw Error(ErrorCode::DecodeError,
                    fmt::format("need {} bytes at offset {}, have {}", count, offset_, bytes_.size() - offset_));
    }
    auto view = bytes_.subspan(offset_, count);
    offset_ += count;
    return view;
}

std::uint8_t ByteReader::get_u8() { return take(1)[0]; }

std::uint16_t ByteReader::get_u16() {
    auto v = take(2);
    return static_cast<std::uint16_t>((v[0] << 8) | v[1]);
}

std::uint64_t ByteReader::get_u64() {
    std::uint64_t value = 0;
    for (auto b : take(8)) value = (value << 8) | b;
    return value;
}

Bytes ByteReader::get_raw(std::size_t count) {
    auto v = take(count);
    return Bytes(v.begin(), v.end());
}

Bytes ByteReader::get_field() { return get_raw(get_u16()); }

void ByteReader::expect_end() const {
    if (!at_end()) {
        throw Error(ErrorCode::DecodeError, fmt::format("{} trailing bytes", bytes_.size() - offset_));
    }
}

}  // namespace vrevoke
