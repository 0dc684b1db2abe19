// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsmatch/ingest.hpp"
#include "tsmatch/metrics.hpp"
#include "tsmatch/schema.hpp"
#include "tsmatch/table.hpp"

namespace tsmatch {

struct MatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class WeightMode { Global, PerAttribute };

/// Raw metric weights in [0,1], indexed by MetricId.
using WeightVector = MetricVector;

inline constexpr WeightVector kUniformWeights = {1, 1, 1, 1, 1, 1, 1};

struct WeightConfig {
    double alpha = 0.5;
    double theta = 0.5;
    WeightMode mode = WeightMode::Global;
    WeightVector global_weights = kUniformWeights;
    std::map<std::string, WeightVector> per_attribute;

    /// Throws MatchError when a PER_ATTRIBUTE config has no entry for `attribute`.
    const WeightVector& weights_for(const std::string& attribute) const;

    bool operator==(const WeightConfig&) const = default;
};

/// YAML weight profile (what the optimizer writes and `match --weights` reads).
std::string dump_weight_config(const WeightConfig& config);
WeightConfig load_weight_config(std::string_view yaml_text);
WeightConfig load_weight_config_file(const std::string& path);

struct PairScore {
    double hybrid = 0.0;
    double schema_part = 0.0;
    double instance_part = 0.0;
    MetricVector breakdown{};
};

/// Blends precomputed raw metric values. Within each group the weights of the
/// metrics applicable to `type` are normalized to sum to one; a group with no
/// applicable metric or only zero weights scores 0.
PairScore combine_scores(const MetricVector& raw, DataType type, const WeightVector& weights, double alpha);

PairScore score_pair(const ColumnProfile& column, const AttributeSpec& attr, const WeightConfig& config);

/// Column x attribute hybrid scores. Cells below theta are masked and never
/// take part in an assignment.
struct ScoreMatrix {
    std::vector<std::string> column_headers;
    std::vector<std::string> attribute_names;
    std::vector<double> scores;         // row-major, rows = source columns
    std::vector<char> mask;             // 1 = below threshold
    std::vector<MetricVector> breakdown;
    double theta = 0.0;

    std::size_t rows() const { return column_headers.size(); }
    std::size_t cols() const { return attribute_names.size(); }
    double score(std::size_t r, std::size_t c) const { return scores[r * cols() + c]; }
    bool masked(std::size_t r, std::size_t c) const { return mask[r * cols() + c] != 0; }
};

ScoreMatrix build_matrix(const std::vector<ColumnProfile>& columns, const TargetSchema& schema,
                         const WeightConfig& config);
ScoreMatrix build_matrix(const SourceTable& table, const TargetSchema& schema, const WeightConfig& config);

/// Matrix from explicit scores (rows = columns); masks cells below theta.
ScoreMatrix make_matrix(std::vector<std::string> column_headers, std::vector<std::string> attribute_names,
                        const std::vector<std::vector<double>>& scores, double theta);

struct MappedPair {
    std::size_t column = 0;
    std::size_t attribute_index = 0;
    std::string attribute;
    double score = 0.0;
    MetricVector breakdown{};
};

struct MappingResult {
    std::vector<MappedPair> pairs;  // ordered by column index
    std::vector<std::size_t> omitted_columns;
    std::vector<std::string> unfilled_attributes;

    double total_score() const;
};

/// Maximum-total-score one-to-one assignment over unmasked cells.
MappingResult assign(const ScoreMatrix& matrix);

/// Each column in index order takes its best still-free unmasked attribute.
MappingResult greedy_assign(const ScoreMatrix& matrix);

struct CellWarning {
    std::size_t row = 0;
    std::string attribute;
    std::string raw;
};

struct StandardizedTable {
    Table table;
    std::vector<CellWarning> warnings;
};

/// Projects a source table onto the schema's columns, normalizing values:
/// DECIMAL as plain numbers, DATE as ISO-8601, STRING trimmed.
StandardizedTable project_table(const SourceTable& table, const TargetSchema& schema, const MappingResult& mapping);

/// Mapping output document as JSON text (sorted keys).
std::string mapping_to_json(const SourceTable& table, const MappingResult& mapping);

}  // namespace tsmatch
