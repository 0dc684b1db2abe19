// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tsmatch/ingest.hpp"
#include "tsmatch/matcher.hpp"
#include "tsmatch/metrics.hpp"
#include "tsmatch/schema.hpp"

namespace tsmatch {

struct OptimizerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raw metric values for every (document, column, attribute), so that any
/// WeightConfig can be scored by lookups and weighted sums only.
struct MetricTensor {
    std::vector<std::string> document_ids;
    std::vector<std::string> format_ids;
    std::vector<std::vector<std::string>> column_headers;  // per document
    std::vector<std::string> attribute_names;
    std::vector<DataType> attribute_types;

    std::size_t document_count() const { return document_ids.size(); }
    std::size_t attribute_count() const { return attribute_names.size(); }
    std::size_t column_count(std::size_t doc) const { return column_headers[doc].size(); }

    const MetricVector& cell(std::size_t doc, std::size_t column, std::size_t attr) const {
        return cells_[offsets_[doc] + column * attribute_count() + attr];
    }
    double at(std::size_t doc, std::size_t column, std::size_t attr, MetricId m) const {
        return cell(doc, column, attr)[index_of(m)];
    }
    /// Number of stored metric values (cells x metrics).
    std::size_t entry_count() const { return cells_.size() * kMetricCount; }

   private:
    friend MetricTensor precompute_tensor(const std::vector<SourceTable>&, const TargetSchema&, unsigned);
    std::vector<std::size_t> offsets_;
    std::vector<MetricVector> cells_;
};

MetricTensor precompute_tensor(const std::vector<SourceTable>& documents, const TargetSchema& schema,
                               unsigned workers = 1);

struct TruthEntry {
    std::string format_id;
    std::string source_column;  // raw header after dedup suffixing
    std::string target_attribute;

    bool operator==(const TruthEntry&) const = default;
};

/// Labeled column -> attribute pairs per layout. Columns without an entry are
/// expected to be omitted.
struct GroundTruth {
    std::vector<TruthEntry> entries;

    std::optional<std::string> target_for(const std::string& format_id, const std::string& column) const;
};

/// CSV with header format,source_column,target_attribute.
GroundTruth load_ground_truth(std::string_view csv_text);
GroundTruth load_ground_truth_file(const std::string& path);
std::string ground_truth_to_csv(const GroundTruth& truth);

/// Fails when a target attribute is not in the schema.
void validate_ground_truth(const GroundTruth& truth, const TargetSchema& schema);

struct Prf {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t tp = 0, fp = 0, fn = 0;
};

Prf prf_from_counts(std::size_t tp, std::size_t fp, std::size_t fn);

/// Runs threshold + assignment per document from tensor lookups and scores the
/// predicted pairs against the truth.
Prf evaluate_config(const MetricTensor& tensor, const GroundTruth& truth, const WeightConfig& config);

/// Same evaluation through direct metric computation on the tables.
Prf evaluate_config_direct(const std::vector<SourceTable>& documents, const TargetSchema& schema,
                           const GroundTruth& truth, const WeightConfig& config);

/// Per-document mappings computed from tensor lookups.
std::vector<MappingResult> match_from_tensor(const MetricTensor& tensor, const WeightConfig& config);

enum class SearchMode { ParamsOnly, WeightsOnly, ParamsAndWeights };

struct GridSpec {
    std::size_t grid_size = 4;
    double alpha_min = 0.0, alpha_max = 1.0;
    double theta_min = 0.0, theta_max = 1.0;
    SearchMode mode = SearchMode::WeightsOnly;
    /// Metrics whose weights are searched; the rest keep their current value.
    std::vector<MetricId> metrics{kAllMetrics.begin(), kAllMetrics.end()};

    /// {0, 1/(g-1), ..., 1}
    std::vector<double> weight_values() const;
    /// g evenly spaced values over the range, plus the 0.5 default when in range.
    std::vector<double> alpha_values() const;
    std::vector<double> theta_values() const;
};

struct SearchStats {
    std::size_t configs_evaluated = 0;
    double wall_seconds = 0.0;
};

struct ParamSearchResult {
    double alpha = 0.5;
    double theta = 0.5;
    Prf score;
    SearchStats stats;
};

/// Exhaustive (alpha, theta) scan with `weights` fixed. Best F1 wins; ties go
/// to the smaller theta, then the smaller alpha.
ParamSearchResult grid_search_params(const MetricTensor& tensor, const GroundTruth& truth, const GridSpec& grid,
                                     const WeightConfig& weights = {}, unsigned workers = 1);

struct AttributeSearchStep {
    std::string attribute;
    std::size_t candidates = 0;
    WeightVector chosen{};
    double f1 = 0.0;
};

struct WeightSearchResult {
    WeightConfig config;  // PER_ATTRIBUTE
    Prf score;
    Prf baseline;  // uniform weights at the same alpha/theta
    SearchStats stats;
    std::vector<AttributeSearchStep> steps;
};

/// One coordinate pass over the attributes in schema order. For each attribute
/// every grid vector over its applicable searched metrics (minus all-zero) is
/// scored by global F1 with the other attributes held at their current best.
/// Ties keep the vector closest (L2) to the uniform default, then the first in
/// scan order.
WeightSearchResult grid_search_weights(const MetricTensor& tensor, const GroundTruth& truth, const GridSpec& grid,
                                       double alpha, double theta, unsigned workers = 1);

/// Candidate vectors scanned for one attribute of type `type`.
std::size_t weight_candidate_count(DataType type, const GridSpec& grid);

struct RuntimeReport {
    std::size_t configs_evaluated = 0;
    double wall_seconds = 0.0;
};

RuntimeReport runtime_report(const SearchStats& stats);

}  // namespace tsmatch
