// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tsmatch/date.hpp"

namespace tsmatch {

struct IngestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A rectangular table of raw cell strings as read from one document.
struct SourceTable {
    std::string format_id;
    std::string document_id;
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> cells;  // row-major

    std::size_t row_count() const { return cells.size(); }
    std::size_t col_count() const { return headers.size(); }

    bool operator==(const SourceTable&) const = default;
};

struct ColumnProfile {
    std::string header_raw;
    std::string header_clean;  // tokens joined by single spaces
    std::vector<std::string> header_tokens;
    std::vector<std::string> values_raw;
    std::vector<std::string> values_nonmissing;
    std::vector<double> numeric_values;
    std::vector<Date> date_values;
    std::optional<double> mean;  // defined iff numeric_values is non-empty
};

/// Reads CSV text with a header row. Short rows are padded with empty cells,
/// duplicate headers get positional suffixes (".1", ".2", ...).
SourceTable load_table(std::string_view csv_text, std::string format_id, std::string document_id = {});
SourceTable load_table_file(const std::string& path, std::string format_id, std::string document_id = {});

bool is_missing(std::string_view cell);

/// Locale-tolerant number parsing ("€ 1,177,924", "156178,19", "1.409").
std::optional<double> parse_numeric(std::string_view cell);

/// Day-first date parsing: ISO, d-m-y[y], and d-monthname-y[y] in English or Dutch.
std::optional<Date> parse_date(std::string_view cell);

/// Lowercased header tokens with bracketed annotations, unit tokens,
/// punctuation, and dedup suffixes removed.
std::vector<std::string> clean_tokens(std::string_view text);
std::string clean_text(std::string_view text);

ColumnProfile profile_column(const SourceTable& table, std::size_t index);
std::vector<ColumnProfile> profile_table(const SourceTable& table);

/// One document listed in a dataset manifest.
struct ManifestEntry {
    std::string path;  // resolved against the manifest's directory
    std::string format_id;
    std::string document_id;
};

std::vector<ManifestEntry> load_manifest(const std::string& manifest_path);
std::vector<SourceTable> load_documents(const std::vector<ManifestEntry>& entries);

}  // namespace tsmatch
