//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <ostream>

namespace afmvox {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // processing failed or produced failures
inline constexpr int kExitUsage = 2;    // bad flags or invalid configuration

/// Entry point of the afmvox tool. Human-readable reports go to `out`,
/// progress and diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace afmvox
