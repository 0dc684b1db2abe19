// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsmatch/matcher.hpp"
#include "tsmatch/optimizer.hpp"
#include "tsmatch/schema.hpp"
#include "tsmatch/table.hpp"

namespace tsmatch {

struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsabilityReport {
    std::size_t column_count = 0;
    std::size_t row_count = 0;
    std::size_t null_cells = 0;
    std::size_t total_cells = 0;
    double null_fraction = 0.0;
    std::map<std::string, double> per_column_null_fraction;
    bool empty = false;  // 0 rows; null_fraction reported as 0
};

UsabilityReport usability(const Table& table);

/// Row-wise concatenation of tables with identical headers.
Table stack_tables(const std::vector<Table>& tables);

struct WilcoxonResult {
    double statistic = 0.0;  // min(W+, W-)
    double w_plus = 0.0;
    double w_minus = 0.0;
    double p_value = 1.0;  // two-sided
    std::size_t n_effective = 0;
    bool exact = true;
};

/// Signed-rank test on a_i - b_i. Zero differences are dropped and tied
/// magnitudes get average ranks. Exact null distribution up to 20 nonzero
/// pairs, normal approximation (continuity and tie corrected) above.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b);

struct TypeWeightGap {
    DataType type = DataType::String;
    std::size_t attributes = 0;
    double schema_avg = 0.0;
    double instance_avg = 0.0;
    double gap = 0.0;  // instance_avg - schema_avg
};

/// Per attribute the raw weights of its applicable metrics are normalized to
/// sum to one, then averaged per metric group. Types are reported in
/// String, Decimal, Date order; types without attributes are left out.
std::vector<TypeWeightGap> weight_gap_analysis(const WeightConfig& config, const TargetSchema& schema);

/// Per-attribute (schema group mean, instance group mean) of the normalized
/// weights, for attributes with applicable metrics in both groups.
std::pair<std::vector<double>, std::vector<double>> group_weight_pairs(const WeightConfig& config,
                                                                       const TargetSchema& schema);

struct MethodResult {
    std::string name;
    Prf score;
    UsabilityReport usability;
};

struct ComparisonReport {
    std::vector<MethodResult> hybrid;
    std::optional<MethodResult> baseline;  // nullopt = skipped
    std::optional<WilcoxonResult> weight_analysis;
    std::vector<TypeWeightGap> weight_gaps;
};

std::string report_to_json(const ComparisonReport& report);
std::string report_to_text(const ComparisonReport& report);

/// Inverse of report_to_json; throws EvaluationError on malformed input.
ComparisonReport report_from_json(std::string_view json_text);

/// Writes <dir>/report.json and <dir>/report.txt.
void emit_report(const ComparisonReport& report, const std::string& dir);

}  // namespace tsmatch
