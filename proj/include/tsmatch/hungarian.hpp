// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace tsmatch {

/// Kuhn-Munkres with row/column potentials on a dense n x n cost matrix
/// (row-major). Returns, for every row, the column it is assigned to in a
/// minimum-cost perfect assignment. Rows are inserted in index order and
/// equal reduced costs resolve to the lower column, so ties are deterministic.
std::vector<std::size_t> solve_assignment(const std::vector<double>& cost, std::size_t n);

/// Maximum-total-score one-to-one pairing of rows and columns of a row-major
/// score grid, ignoring cells flagged in `mask`. Returns (row, col) pairs in
/// row order. Scores are expected in [0,1].
std::vector<std::pair<std::size_t, std::size_t>> max_score_assignment(std::span<const double> scores,
                                                                      std::span<const char> mask,
                                                                      std::size_t rows, std::size_t cols);

}  // namespace tsmatch
