// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#include "tsmatch/fd_baseline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "tsmatch/csv.hpp"

namespace tsmatch {

DominantType dominant_type(const ColumnProfile& column) {
    if (column.values_nonmissing.empty()) return DominantType::Empty;
    std::size_t dates = 0, numbers = 0, strings = 0;
    for (const auto& v : column.values_nonmissing) {
        if (parse_date(v)) ++dates;
        else if (parse_numeric(v)) ++numbers;
        else ++strings;
    }
    if (dates >= numbers && dates >= strings) return DominantType::Date;
    if (numbers >= strings) return DominantType::Numeric;
    return DominantType::String;
}

namespace {

double token_jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    const std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    if (sa.empty() && sb.empty()) return 1.0;
    if (sa.empty() || sb.empty()) return 0.0;
    std::size_t inter = 0;
    for (const auto& t : sa) inter += sb.count(t);
    return static_cast<double>(inter) / static_cast<double>(sa.size() + sb.size() - inter);
}

double similarity_with_types(const ColumnProfile& a, DominantType ta, const ColumnProfile& b, DominantType tb) {
    const double agree = (ta == tb && ta != DominantType::Empty) ? 1.0 : 0.0;
    return 0.6 * token_jaccard(a.header_tokens, b.header_tokens) + 0.4 * agree;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FdError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool absent_marker(const std::string& s) { return s.empty() || s == "NA"; }

}  // namespace

double default_column_similarity(const ColumnProfile& a, const ColumnProfile& b) {
    return similarity_with_types(a, dominant_type(a), b, dominant_type(b));
}

ColumnClustering cluster_columns(const std::vector<SourceTable>& documents, double tau,
                                 const ColumnSimilarity& similarity) {
    ColumnClustering out;
    std::vector<ColumnProfile> profiles;
    for (std::size_t d = 0; d < documents.size(); ++d) {
        const auto& doc = documents[d];
        for (std::size_t c = 0; c < doc.col_count(); ++c) {
            out.columns.push_back(ColumnRef{doc.format_id, doc.document_id, doc.headers[c], d, c});
            profiles.push_back(profile_column(doc, c));
        }
    }
    const std::size_t n = out.columns.size();

    struct Edge {
        double sim;
        std::size_t a, b;
    };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (out.columns[i].document_index == out.columns[j].document_index) continue;
            const double s = similarity(profiles[i], profiles[j]);
            if (s >= tau) edges.push_back({s, i, j});
        }
    std::stable_sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.sim > y.sim; });

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<std::set<std::size_t>> docs(n);
    for (std::size_t i = 0; i < n; ++i) docs[i].insert(out.columns[i].document_index);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : edges) {
        std::size_t ra = find(e.a), rb = find(e.b);
        if (ra == rb) continue;
        const auto& da = docs[ra];
        const auto& db = docs[rb];
        bool clash = std::any_of(da.begin(), da.end(), [&](std::size_t d) { return db.count(d) > 0; });
        if (clash) continue;
        if (rb < ra) std::swap(ra, rb);
        parent[rb] = ra;
        docs[ra].insert(docs[rb].begin(), docs[rb].end());
        docs[rb].clear();
    }

    // clusters numbered by first member
    std::map<std::size_t, std::size_t> root_to_cluster;
    out.cluster_of.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto root = find(i);
        auto [it, inserted] = root_to_cluster.emplace(root, out.clusters.size());
        if (inserted) out.clusters.emplace_back();
        out.cluster_of[i] = it->second;
        out.clusters[it->second].push_back(i);
    }
    for (const auto& members : out.clusters) {
        std::string rep;
        bool first = true;
        for (auto i : members) {
            std::string name = profiles[i].header_clean.empty() ? out.columns[i].header_raw : profiles[i].header_clean;
            if (first || name < rep) rep = name;
            first = false;
        }
        out.representatives.push_back(rep);
    }
    return out;
}

Table integrate_fd(const std::vector<SourceTable>& documents, const ColumnClustering& clustering) {
    Table t;
    t.headers.push_back("format_id");
    std::set<std::string> used{"format_id"};
    for (const auto& rep : clustering.representatives) {
        std::string name = rep;
        for (int k = 1; used.contains(name); ++k) name = rep + "." + std::to_string(k);
        used.insert(name);
        t.headers.push_back(name);
    }

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> slot;
    for (std::size_t i = 0; i < clustering.columns.size(); ++i) {
        const auto& ref = clustering.columns[i];
        slot[{ref.document_index, ref.column_index}] = clustering.cluster_of[i] + 1;
    }

    for (std::size_t d = 0; d < documents.size(); ++d) {
        const auto& doc = documents[d];
        for (const auto& row : doc.cells) {
            std::vector<std::optional<std::string>> out(t.headers.size());
            out[0] = doc.format_id;
            for (std::size_t c = 0; c < doc.col_count(); ++c) {
                auto it = slot.find({d, c});
                if (it == slot.end()) throw FdError("clustering does not cover column '" + doc.headers[c] + "'");
                if (!is_missing(row[c])) out[it->second] = row[c];
            }
            t.rows.push_back(std::move(out));
        }
    }
    return t;
}

Table data_columns(const Table& integrated) {
    Table t;
    if (integrated.headers.empty()) return t;
    t.headers.assign(integrated.headers.begin() + 1, integrated.headers.end());
    for (const auto& r : integrated.rows) t.rows.emplace_back(r.begin() + 1, r.end());
    return t;
}

ClusterTruth load_cluster_truth(std::string_view csv_text) {
    std::vector<csv::Row> rows;
    try {
        rows = csv::parse(csv_text);
    } catch (const csv::ParseError& e) {
        throw FdError(std::string("cluster truth: ") + e.what());
    }
    if (rows.empty() || rows.front().size() < 2) throw FdError("cluster truth needs a set_name column and formats");
    ClusterTruth truth;
    truth.formats.assign(rows.front().begin() + 1, rows.front().end());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        ClusterTruthSet set;
        set.name = r[0];
        for (std::size_t f = 0; f < truth.formats.size() && f + 1 < r.size(); ++f)
            if (!absent_marker(r[f + 1])) set.members.emplace_back(truth.formats[f], r[f + 1]);
        truth.sets.push_back(std::move(set));
    }
    return truth;
}

ClusterTruth load_cluster_truth_file(const std::string& path) { return load_cluster_truth(read_file(path)); }

std::string cluster_truth_to_csv(const ClusterTruth& truth) {
    std::vector<csv::Row> rows;
    csv::Row header{"set_name"};
    header.insert(header.end(), truth.formats.begin(), truth.formats.end());
    rows.push_back(header);
    for (const auto& s : truth.sets) {
        csv::Row r{s.name};
        for (const auto& f : truth.formats) {
            std::string cell = "NA";
            for (const auto& [fmt, h] : s.members)
                if (fmt == f) cell = h;
            r.push_back(cell);
        }
        rows.push_back(std::move(r));
    }
    return csv::format(rows);
}

Prf evaluate_clusters(const ColumnClustering& clustering, const ClusterTruth& truth) {
    std::map<std::pair<std::string, std::string>, std::size_t> set_of;
    for (std::size_t s = 0; s < truth.sets.size(); ++s)
        for (const auto& m : truth.sets[s].members) set_of[m] = s;

    std::vector<std::size_t> items, item_set;
    std::set<std::pair<std::string, std::string>> found;
    for (std::size_t i = 0; i < clustering.columns.size(); ++i) {
        const auto& ref = clustering.columns[i];
        auto it = set_of.find({ref.format_id, ref.header_raw});
        if (it == set_of.end()) continue;
        items.push_back(i);
        item_set.push_back(it->second);
        found.insert(it->first);
    }
    for (const auto& [member, s] : set_of)
        if (!found.contains(member))
            throw FdError("cluster truth set '" + truth.sets[s].name + "' references unknown column " + member.first +
                          "/" + member.second);

    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t x = 0; x < items.size(); ++x)
        for (std::size_t y = x + 1; y < items.size(); ++y) {
            const bool pred = clustering.cluster_of[items[x]] == clustering.cluster_of[items[y]];
            const bool gold = item_set[x] == item_set[y];
            if (pred && gold) ++tp;
            else if (pred) ++fp;
            else if (gold) ++fn;
        }
    return prf_from_counts(tp, fp, fn);
}

}  // namespace tsmatch
