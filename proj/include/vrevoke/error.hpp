/**
 * @file error.hpp
 * @brief Error codes and the exception type shared by all vrevoke modules
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vrevoke {

enum class ErrorCode {
    InvalidArgument,
    EncodingOverflow,
    DecodeError,
    BannedSubject,
    NotPreRegistered,
    LtcaRejected,
    ExpiredLtc,
    BadChain,
    ResolutionFailed,
    NoCredential,
    ExpiredCredential,
    NeighborUnreachable,
    ConfigInvalid,
    EmptySamples,
    StoreError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace vrevoke
