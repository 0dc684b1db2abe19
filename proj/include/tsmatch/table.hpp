// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace tsmatch {

/// Materialized output table; a disengaged cell is a null.
struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<std::optional<std::string>>> rows;

    std::size_t row_count() const { return rows.size(); }
    std::size_t col_count() const { return headers.size(); }
};

/// CSV with a header row; nulls are written as empty strings.
std::string to_csv(const Table& table);

/// Shortest round-trip decimal text with a period separator and no grouping.
std::string format_number(double v);

}  // namespace tsmatch
