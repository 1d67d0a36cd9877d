// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>

namespace cubepack::cli {

/// Exit codes: 0 ok, 1 invalid certificate or failed search, 2 usage, parse
/// or parameter error.
inline constexpr int kOk = 0;
inline constexpr int kInvalid = 1;
inline constexpr int kUsage = 2;

/// Entry point of the `cubepack` tool; writes to `out` and `err` only.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cubepack::cli
