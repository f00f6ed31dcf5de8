/**
 * @file cli.hpp
 * @brief vrevoke command line entry point
 *
 * Copyright 2026 vrevoke contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vrevoke {

/// Runs one CLI invocation; args exclude the program name. Returns the exit code.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vrevoke
