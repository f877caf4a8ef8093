// SPDX-License-Identifier: Apache-2.0
//
// Self-check suites for the command-line tool: each suite prints a
// human-readable table of named checks and returns the number of failures.
// The arbitration suite is report-only: it prints which unbalanced-fading
// mapping the sampled data supports and never counts as a failure.

#ifndef ETAMU_TOOLS_VALIDATE_HPP_
#define ETAMU_TOOLS_VALIDATE_HPP_

#include <cstdint>
#include <string>

namespace etamu_cli {

// suite is one of: pdf, noise, kernel, special_cases, hoyt_arbitration, all.
// Returns the failure count (always 0 for hoyt_arbitration); throws
// std::runtime_error for an unknown suite name.
int run_validate(const std::string& suite, std::uint64_t seed);

}  // namespace etamu_cli

#endif  // ETAMU_TOOLS_VALIDATE_HPP_
