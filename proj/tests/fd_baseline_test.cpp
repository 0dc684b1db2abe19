// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#include <gtest/gtest.h>

#include <map>

#include "tsmatch/evaluation.hpp"
#include "tsmatch/fd_baseline.hpp"
#include "tsmatch/synth.hpp"

using namespace tsmatch;

namespace {

SourceTable doc(std::string format, std::vector<std::string> headers, std::vector<std::vector<std::string>> cells) {
    return SourceTable{format, format + "_01", std::move(headers), std::move(cells)};
}

std::vector<SourceTable> generated(std::size_t docs = 1, std::size_t rows = 8) {
    std::vector<SourceTable> out;
    for (const auto& d : generate_dataset(reference_layouts(), docs, rows, 5).documents)
        out.push_back(load_table(d.csv, d.format_id, d.document_id));
    return out;
}

ColumnClustering manual(std::vector<std::pair<std::string, std::string>> cols, std::vector<std::size_t> cluster_of) {
    ColumnClustering c;
    for (std::size_t i = 0; i < cols.size(); ++i) c.columns.push_back({cols[i].first, cols[i].first, cols[i].second, i, 0});
    c.cluster_of = cluster_of;
    return c;
}

}  // namespace

TEST(DominantType, Majority) {
    auto t = doc("A", {"a", "b", "c", "d"}, {{"1", "6-3-2013", "x", "-"}, {"2", "7-3-2013", "3", "n.a."}, {"y", "z", "q", ""}});
    EXPECT_EQ(dominant_type(profile_column(t, 0)), DominantType::Numeric);
    EXPECT_EQ(dominant_type(profile_column(t, 1)), DominantType::Date);
    EXPECT_EQ(dominant_type(profile_column(t, 2)), DominantType::String);
    EXPECT_EQ(dominant_type(profile_column(t, 3)), DominantType::Empty);
    EXPECT_EQ(default_column_similarity(profile_column(t, 3), profile_column(t, 3)), 0.6);
}

TEST(Cluster, TenantFamilyMerges) {
    std::vector<SourceTable> docs = {doc("JLL", {"Tenant", "Office"}, {{"Acme B.V.", "200"}}),
                                     doc("SAVILLS", {"Tenant", "Floor"}, {{"Beta Ltd.", "2"}}),
                                     doc("EDIF", {"Tenant Name", "Rent"}, {{"Gamma GmbH", "5"}})};
    auto c = cluster_columns(docs, 0.7);
    EXPECT_EQ(c.cluster_of[0], c.cluster_of[2]);
    EXPECT_EQ(c.cluster_of[0], c.cluster_of[4]);
    EXPECT_EQ(c.representatives[c.cluster_of[0]], "tenant");
}

TEST(Cluster, MaxThresholdNeedsIdenticalTokensAndTypes) {
    std::vector<SourceTable> docs = {doc("A", {"Tenant", "Office"}, {{"x", "1"}}),
                                     doc("B", {"tenant", "Office"}, {{"y", "z"}}),
                                     doc("C", {"Tenant Name"}, {{"w"}})};
    auto c = cluster_columns(docs, 1.0);
    EXPECT_EQ(c.cluster_of[0], c.cluster_of[2]);
    EXPECT_NE(c.cluster_of[1], c.cluster_of[3]);
    EXPECT_NE(c.cluster_of[0], c.cluster_of[4]);
}

TEST(Cluster, DistinctHeadersStaySingletons) {
    std::vector<SourceTable> docs = {doc("A", {"alpha", "beta"}, {{"1", "2"}}), doc("B", {"gamma", "delta"}, {{"3", "4"}})};
    auto c = cluster_columns(docs, 0.9);
    EXPECT_EQ(c.clusters.size(), 4u);
}

TEST(Cluster, WithinDocumentNeverMerges) {
    auto docs = generated();
    for (double tau : {0.0, 0.4, 0.7}) {
        auto c = cluster_columns(docs, tau);
        for (const auto& members : c.clusters)
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i + 1; j < members.size(); ++j)
                    EXPECT_NE(c.columns[members[i]].document_index, c.columns[members[j]].document_index);
        std::vector<int> seen(c.columns.size(), 0);
        for (const auto& members : c.clusters)
            for (auto m : members) ++seen[m];
        for (int s : seen) EXPECT_EQ(s, 1);
    }
}

TEST(Cluster, ColumnCountMonotoneInTau) {
    auto docs = generated();
    std::size_t previous = 0;
    for (int k = 0; k <= 10; ++k) {
        auto c = cluster_columns(docs, k / 10.0);
        EXPECT_GE(c.clusters.size(), previous) << k;
        previous = c.clusters.size();
    }
}

TEST(Integrate, TwoDocumentsSharingOneCluster) {
    std::vector<SourceTable> docs = {doc("A", {"Tenant", "x1", "x2"}, {{"a", "1", "2"}, {"b", "3", "4"}}),
                                     doc("B", {"Tenant", "y1", "y2"}, {{"c", "5", "6"}})};
    auto c = cluster_columns(docs, 0.99);
    auto t = data_columns(integrate_fd(docs, c));
    EXPECT_EQ(t.col_count(), 5u);
    EXPECT_EQ(t.row_count(), 3u);
    auto u = usability(t);
    EXPECT_EQ(u.null_cells, 6u);
    EXPECT_DOUBLE_EQ(u.null_fraction, 6.0 / 15.0);
}

TEST(Integrate, SingleDocumentIdentity) {
    std::vector<SourceTable> docs = {doc("A", {"Tenant", "Floor"}, {{"a", "1"}, {"b", "2"}})};
    auto t = integrate_fd(docs, cluster_columns(docs, 0.7));
    EXPECT_EQ(t.headers, (std::vector<std::string>{"format_id", "tenant", "floor"}));
    ASSERT_EQ(t.row_count(), 2u);
    EXPECT_EQ(t.rows[1][0], "A");
    EXPECT_EQ(t.rows[1][1], "b");
    EXPECT_EQ(t.rows[1][2], "2");
}

TEST(Integrate, EveryCellExactlyOnce) {
    auto docs = generated(2, 6);
    auto c = cluster_columns(docs, 0.7);
    auto t = integrate_fd(docs, c);
    std::map<std::string, long> balance;
    std::size_t rows = 0;
    for (const auto& d : docs) {
        rows += d.row_count();
        for (const auto& r : d.cells)
            for (const auto& v : r)
                if (!is_missing(v)) ++balance[v];
    }
    EXPECT_EQ(t.row_count(), rows);
    for (const auto& r : t.rows)
        for (std::size_t k = 1; k < r.size(); ++k)
            if (r[k]) --balance[*r[k]];
    for (const auto& [v, n] : balance) EXPECT_EQ(n, 0) << v;
}

TEST(Integrate, DisjointClustersNullFormula) {
    std::vector<SourceTable> docs = {doc("A", {"a1", "a2"}, {{"1", "2"}, {"3", "4"}, {"5", "6"}}),
                                     doc("B", {"b1", "b2", "b3"}, {{"7", "8", "9"}})};
    auto t = data_columns(integrate_fd(docs, cluster_columns(docs, 1.0)));
    const double cells = 3 * 2 + 1 * 3, total = 4.0 * 5.0;
    EXPECT_DOUBLE_EQ(usability(t).null_fraction, 1.0 - cells / total);
}

TEST(Integrate, UncoveredColumnThrows) {
    std::vector<SourceTable> docs = {doc("A", {"a"}, {{"1"}})};
    EXPECT_THROW(integrate_fd(docs, ColumnClustering{}), FdError);
}

TEST(ClusterEval, PairCounting) {
    ClusterTruth truth{{"A", "B", "C"}, {{"s", {{"A", "a"}, {"B", "b"}, {"C", "c"}}}}};
    auto p = evaluate_clusters(manual({{"A", "a"}, {"B", "b"}, {"C", "c"}}, {0, 0, 1}), truth);
    EXPECT_DOUBLE_EQ(p.precision, 1.0);
    EXPECT_DOUBLE_EQ(p.recall, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(p.f1, 0.5);
    EXPECT_DOUBLE_EQ(evaluate_clusters(manual({{"A", "a"}, {"B", "b"}, {"C", "c"}}, {0, 0, 0}), truth).f1, 1.0);
    ClusterTruth bad{{"A"}, {{"s", {{"A", "zzz"}}}}};
    EXPECT_THROW(evaluate_clusters(manual({{"A", "a"}}, {0}), bad), FdError);
}

TEST(ClusterTruth, CsvRoundTrip) {
    const std::string text = "set_name,JLL,CBRE\ntenant_name,Tenant,Tenant\nfloor,Floor,NA\n";
    auto t = load_cluster_truth(text);
    ASSERT_EQ(t.sets.size(), 2u);
    EXPECT_EQ(t.sets[1].members.size(), 1u);
    EXPECT_EQ(load_cluster_truth(cluster_truth_to_csv(t)).sets[1].members, t.sets[1].members);
}

TEST(ClusterEval, GeneratedTruthResolves) {
    auto ds = generate_dataset(reference_layouts(), 1, 5, 9);
    std::vector<SourceTable> docs;
    for (const auto& d : ds.documents) docs.push_back(load_table(d.csv, d.format_id, d.document_id));
    auto p = evaluate_clusters(cluster_columns(docs, 0.7), ds.cluster_truth);
    EXPECT_GT(p.precision, 0.0);
    EXPECT_LT(p.recall, 1.0);
}
