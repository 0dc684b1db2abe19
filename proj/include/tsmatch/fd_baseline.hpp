// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsmatch/ingest.hpp"
#include "tsmatch/optimizer.hpp"
#include "tsmatch/table.hpp"

namespace tsmatch {

struct FdError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ColumnRef {
    std::string format_id;
    std::string document_id;
    std::string header_raw;
    std::size_t document_index = 0;
    std::size_t column_index = 0;

    bool operator==(const ColumnRef&) const = default;
};

/// Partition of every column of every document.
struct ColumnClustering {
    std::vector<ColumnRef> columns;                  // documents in order, columns in order
    std::vector<std::size_t> cluster_of;             // parallel to `columns`
    std::vector<std::vector<std::size_t>> clusters;  // member indices into `columns`
    std::vector<std::string> representatives;        // smallest cleaned header per cluster
};

enum class DominantType { Empty, String, Numeric, Date };

/// Majority parse type of the non-missing cells; Empty for all-missing columns.
DominantType dominant_type(const ColumnProfile& column);

/// Pairwise column similarity in [0,1]. A learned embedding matcher can be
/// plugged in here.
using ColumnSimilarity = std::function<double(const ColumnProfile&, const ColumnProfile&)>;

/// 0.6 * Jaccard(header tokens) + 0.4 * [dominant types agree]; Empty never agrees.
double default_column_similarity(const ColumnProfile& a, const ColumnProfile& b);

/// Links cross-document column pairs whose similarity reaches `tau` and
/// takes connected components. Links are added in descending similarity
/// (then index) order and skipped when they would put two columns of one
/// document into the same cluster.
ColumnClustering cluster_columns(const std::vector<SourceTable>& documents, double tau,
                                 const ColumnSimilarity& similarity = default_column_similarity);

/// Aligned outer union: one output column per cluster plus a leading
/// `format_id` provenance column; rows of all documents concatenated.
Table integrate_fd(const std::vector<SourceTable>& documents, const ColumnClustering& clustering);

/// Data-only view of an integrated table (provenance column dropped).
Table data_columns(const Table& integrated);

/// Labeled sets of equivalent columns, one header (or NA) per layout.
struct ClusterTruthSet {
    std::string name;
    std::vector<std::pair<std::string, std::string>> members;  // (format_id, header_raw)
};

struct ClusterTruth {
    std::vector<std::string> formats;
    std::vector<ClusterTruthSet> sets;
};

/// CSV: set_name,<format>,<format>,...; "NA" or empty marks an absent column.
ClusterTruth load_cluster_truth(std::string_view csv_text);
ClusterTruth load_cluster_truth_file(const std::string& path);
std::string cluster_truth_to_csv(const ClusterTruth& truth);

/// Pairwise precision/recall over the columns named in the truth sets. A
/// (format, header) member stands for that column in every document of the
/// format.
Prf evaluate_clusters(const ColumnClustering& clustering, const ClusterTruth& truth);

}  // namespace tsmatch
