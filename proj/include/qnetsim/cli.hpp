// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

namespace qnetsim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

/// Entry point of the `qnetsim` command line tool.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qnetsim
