// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tsmatch::csv {

using Row = std::vector<std::string>;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// RFC-4180 records: comma separated, double-quote escaping, CRLF or LF line ends.
// A UTF-8 byte-order mark at the start is skipped. A trailing newline does not
// produce an empty record.
std::vector<Row> parse(std::string_view text);

std::string quote(std::string_view field);
std::string format_row(const Row& row);
std::string format(const std::vector<Row>& rows);

}  // namespace tsmatch::csv
