// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tsmatch::cli {

/// Runs one subcommand (generate, match, optimize, integrate-fd, evaluate,
/// report). `args` excludes the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

/// Output directory used when --out is not given: $TSMATCH_OUT_DIR, else
/// "tsmatch_out".
std::string default_out_dir();

}  // namespace tsmatch::cli
