// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

#include "tsmatch/ingest.hpp"
#include "tsmatch/schema.hpp"

namespace tsmatch {

enum class MetricId : std::size_t { Levenshtein, Jaccard, Synonym, NumericType, DateType, Range, Ks };
enum class MetricGroup { Schema, Instance };

inline constexpr std::size_t kMetricCount = 7;
inline constexpr std::array<MetricId, kMetricCount> kAllMetrics = {
    MetricId::Levenshtein, MetricId::Jaccard, MetricId::Synonym, MetricId::NumericType,
    MetricId::DateType,    MetricId::Range,   MetricId::Ks};

using MetricVector = std::array<double, kMetricCount>;

constexpr std::size_t index_of(MetricId m) { return static_cast<std::size_t>(m); }

constexpr MetricGroup group_of(MetricId m) {
    return index_of(m) < 3 ? MetricGroup::Schema : MetricGroup::Instance;
}

std::string_view to_string(MetricId m);
std::optional<MetricId> parse_metric_id(std::string_view name);

/// Instance metrics only apply to some data types: numeric type, range and
/// KS to DECIMAL, date type to DATE. Schema metrics always apply.
bool is_applicable(MetricId m, DataType t);

// String primitives -----------------------------------------------------------

/// Unit-cost insert/delete/substitute edit distance over bytes.
std::size_t edit_distance(std::string_view a, std::string_view b);

/// Indel-normalized similarity in [0,1]: 1 - indel(a,b) / (|a| + |b|).
double indel_ratio(std::string_view a, std::string_view b);

/// Token-set ratio in [0,1] over whitespace tokens of already-cleaned strings.
double token_set_ratio(std::string_view a, std::string_view b);

// Column-to-attribute metrics, each in [0,1] --------------------------------

double sim_levenshtein(const ColumnProfile& column, const AttributeSpec& attr);
double sim_jaccard(const ColumnProfile& column, const AttributeSpec& attr);
double sim_synonym(const ColumnProfile& column, const AttributeSpec& attr);
double sim_numeric_type(const ColumnProfile& column, const AttributeSpec& attr);
double sim_date_type(const ColumnProfile& column, const AttributeSpec& attr);
double sim_range(const ColumnProfile& column, const AttributeSpec& attr);
double sim_ks(const ColumnProfile& column, const AttributeSpec& attr);

double compute_metric(MetricId m, const ColumnProfile& column, const AttributeSpec& attr);

/// All seven metrics; inapplicable ones are 0.
MetricVector compute_metrics(const ColumnProfile& column, const AttributeSpec& attr);

double normal_cdf(double z);

}  // namespace tsmatch
