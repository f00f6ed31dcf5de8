/**
 * @file bytes.hpp
 * @brief Byte buffers, hex text form, and big-endian length-prefixed codecs
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vrevoke {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Lowercase hex, two characters per byte.
std::string to_hex(ByteView bytes);

/// Accepts upper or lower case; throws Error(InvalidArgument) on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

Bytes to_bytes(std::string_view text);

/// Largest payload a 2-byte length prefix can describe.
inline constexpr std::size_t kMaxFieldLength = 0xFFFF;

class ByteWriter {
public:
    void put_u8(std::uint8_t value);
    void put_u16(std::uint16_t value);
    void put_u64(std::uint64_t value);
    void put_i64(std::int64_t value) { put_u64(static_cast<std::uint64_t>(value)); }
    void put_raw(ByteView bytes);
    /// 2-byte big-endian length, then the bytes. Throws EncodingOverflow past kMaxFieldLength.
    void put_field(ByteView bytes);

    const Bytes& bytes() const& { return buffer_; }
    Bytes bytes() && { return std::move(buffer_); }

private:
    Bytes buffer_;
};

/// Reads what ByteWriter wrote; every underflow throws Error(DecodeError).
class ByteReader {
public:
    explicit ByteReader(ByteView bytes) : bytes_(bytes) {}

    std::uint8_t get_u8();
    std::uint16_t get_u16();
    std::uint64_t get_u64();
    std::int64_t get_i64() { return static_cast<std::int64_t>(get_u64()); }
    Bytes get_raw(std::size_t count);
    Bytes get_field();

    bool at_end() const noexcept { return offset_ == bytes_.size(); }
    /// Throws DecodeError if unread bytes remain.
    void expect_end() const;

private:
    ByteView take(std::size_t count);

    ByteView bytes_;
    std::size_t offset_ = 0;
};

}  // namespace vrevoke
