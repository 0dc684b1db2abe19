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

enum class DataType { String, Decimal, Date };

std::string_view to_string(DataType t);
std::optional<DataType> parse_data_type(std::string_view text);

/// Typical numeric characteristics of a DECIMAL attribute. Quartiles and mean
/// are optional in the schema file and completed by derive_stats().
struct NumericProfile {
    double min = 0.0;
    double max = 0.0;
    std::optional<double> mean;
    std::optional<double> q1;
    std::optional<double> q3;

    double iqr() const { return q3.value_or(max) - q1.value_or(min); }
    /// Normal-scale parameter matching the interquartile range.
    double sigma() const { return iqr() / 1.349; }

    bool operator==(const NumericProfile&) const = default;
};

struct DateProfile {
    Date min_date;
    Date max_date;

    bool operator==(const DateProfile&) const = default;
};

struct AttributeSpec {
    std::string name;
    DataType data_type = DataType::String;
    std::vector<std::string> synonyms;
    std::optional<NumericProfile> numeric_profile;
    std::optional<DateProfile> date_profile;

    bool operator==(const AttributeSpec&) const = default;
};

/// The target template. Attribute order defines the standardized column order.
struct TargetSchema {
    std::string version;
    std::vector<AttributeSpec> attributes;

    std::optional<std::size_t> index_of(std::string_view name) const;
    bool operator==(const TargetSchema&) const = default;
};

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses and validates a schema document. Unknown keys are reported through
/// `warnings` when given and otherwise ignored.
TargetSchema load_schema(std::string_view yaml_text, std::vector<std::string>* warnings = nullptr);
TargetSchema load_schema_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

/// Fills missing mean/q1/q3 by linear interpolation over [min, max]. Values
/// already present are kept.
AttributeSpec derive_stats(AttributeSpec spec);

std::string dump_schema(const TargetSchema& schema);

/// Lowercase snake_case form used for attribute names.
std::string normalize_attribute_name(std::string_view name);

}  // namespace tsmatch
