// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#include "tsmatch/cli.hpp"

int main(int argc, char** argv) { return tsmatch::cli::run(argc, argv); }
