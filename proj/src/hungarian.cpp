// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#include "tsmatch/hungarian.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace tsmatch {

std::vector<std::size_t> solve_assignment(const std::vector<double>& cost, std::size_t n) {
    if (cost.size() != n * n) throw std::invalid_argument("cost matrix must be n x n");
    if (n == 0) return {};

    constexpr double inf = std::numeric_limits<double>::infinity();
    // 1-based potentials; column 0 is the virtual start of each augmenting path
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    auto c = [&](std::size_t i, std::size_t j) { return cost[(i - 1) * n + (j - 1)]; };

    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = match[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = c(i0, j) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<std::size_t> row_to_col(n);
    for (std::size_t j = 1; j <= n; ++j) row_to_col[match[j] - 1] = j - 1;
    return row_to_col;
}

std::vector<std::pair<std::size_t, std::size_t>> max_score_assignment(std::span<const double> scores,
                                                                      std::span<const char> mask,
                                                                      std::size_t rows, std::size_t cols) {
    if (scores.size() != rows * cols || mask.size() != rows * cols)
        throw std::invalid_argument("score grid does not match its dimensions");

    // Rows and columns without any unmasked cell can never be assigned.
    std::vector<std::size_t> live_rows, live_cols;
    std::vector<char> col_live(cols, 0);
    for (std::size_t r = 0; r < rows; ++r) {
        bool any = false;
        for (std::size_t c = 0; c < cols; ++c)
            if (!mask[r * cols + c]) {
                any = true;
                col_live[c] = 1;
            }
        if (any) live_rows.push_back(r);
    }
    for (std::size_t c = 0; c < cols; ++c)
        if (col_live[c]) live_cols.push_back(c);

    std::vector<std::pair<std::size_t, std::size_t>> chosen;
    if (live_rows.empty()) return chosen;

    // cost = 1 - score. Masked and padding cells cost 1, the same as a score-0
    // cell, so taking one is equivalent to leaving the row unassigned.
    const std::size_t n = std::max(live_rows.size(), live_cols.size());
    std::vector<double> cost(n * n, 1.0);
    for (std::size_t i = 0; i < live_rows.size(); ++i)
        for (std::size_t j = 0; j < live_cols.size(); ++j) {
            const std::size_t k = live_rows[i] * cols + live_cols[j];
            if (!mask[k]) cost[i * n + j] = 1.0 - scores[k];
        }
    const auto sol = solve_assignment(cost, n);
    for (std::size_t i = 0; i < live_rows.size(); ++i) {
        const std::size_t j = sol[i];
        if (j >= live_cols.size()) continue;
        if (mask[live_rows[i] * cols + live_cols[j]]) continue;
        chosen.emplace_back(live_rows[i], live_cols[j]);
    }
    return chosen;
}

}  // namespace tsmatch
