// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#include "tsmatch/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "tsmatch/metrics.hpp"

namespace tsmatch {

UsabilityReport usability(const Table& table) {
    UsabilityReport r;
    r.column_count = table.col_count();
    r.row_count = table.row_count();
    r.total_cells = r.column_count * r.row_count;
    std::vector<std::size_t> per(r.column_count, 0);
    for (const auto& row : table.rows)
        for (std::size_t c = 0; c < r.column_count; ++c)
            if (c >= row.size() || !row[c]) ++per[c];
    for (std::size_t c = 0; c < r.column_count; ++c) {
        r.null_cells += per[c];
        r.per_column_null_fraction[table.headers[c]] =
            r.row_count == 0 ? 0.0 : static_cast<double>(per[c]) / static_cast<double>(r.row_count);
    }
    r.empty = r.row_count == 0;
    r.null_fraction = r.total_cells == 0 ? 0.0 : static_cast<double>(r.null_cells) / static_cast<double>(r.total_cells);
    return r;
}

Table stack_tables(const std::vector<Table>& tables) {
    Table out;
    if (tables.empty()) return out;
    out.headers = tables.front().headers;
    for (const auto& t : tables) {
        if (t.headers != out.headers) throw EvaluationError("cannot stack tables with different headers");
        out.rows.insert(out.rows.end(), t.rows.begin(), t.rows.end());
    }
    return out;
}

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw EvaluationError("paired samples differ in length");
    if (a.empty()) throw EvaluationError("paired samples are empty");
    std::vector<double> d;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] - b[i] != 0.0) d.push_back(a[i] - b[i]);
    if (d.empty()) throw EvaluationError("no nonzero pairs");
    const std::size_t n = d.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return std::abs(d[x]) < std::abs(d[y]); });
    // doubled ranks stay integral under averaging
    std::vector<std::int64_t> rank2(n);
    double tie_term = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && std::abs(d[order[j + 1]]) == std::abs(d[order[i]])) ++j;
        const auto r2 = static_cast<std::int64_t>(i + 1 + j + 1);  // 2 * average of ranks i+1..j+1
        for (std::size_t k = i; k <= j; ++k) rank2[order[k]] = r2;
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }

    WilcoxonResult res;
    res.n_effective = n;
    std::int64_t wplus2 = 0, total2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        total2 += rank2[i];
        if (d[i] > 0) wplus2 += rank2[i];
    }
    res.w_plus = static_cast<double>(wplus2) / 2.0;
    res.w_minus = static_cast<double>(total2 - wplus2) / 2.0;
    const std::int64_t w2 = std::min(wplus2, total2 - wplus2);
    res.statistic = static_cast<double>(w2) / 2.0;

    if (n <= 20) {
        res.exact = true;
        // counts of sign vectors per doubled positive rank sum
        std::vector<double> ways(static_cast<std::size_t>(total2) + 1, 0.0);
        ways[0] = 1.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::int64_t s = total2; s >= rank2[i]; --s) ways[s] += ways[s - rank2[i]];
        double below = 0.0;
        for (std::int64_t s = 0; s <= w2; ++s) below += ways[s];
        res.p_value = std::min(1.0, 2.0 * below / std::ldexp(1.0, static_cast<int>(n)));
    } else {
        res.exact = false;
        const double nn = static_cast<double>(n);
        const double mean = nn * (nn + 1.0) / 4.0;
        const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
        const double dev = std::abs(res.statistic - mean) - 0.5;
        if (var <= 0.0 || dev <= 0.0) {
            res.p_value = 1.0;
        } else {
            res.p_value = std::min(1.0, 2.0 * normal_cdf(-dev / std::sqrt(var)));
        }
    }
    return res;
}

namespace {

struct GroupMeans {
    double schema = 0.0;
    double instance = 0.0;
    std::size_t schema_n = 0;
    std::size_t instance_n = 0;
};

std::optional<GroupMeans> normalized_group_means(const WeightVector& w, DataType type) {
    double sum = 0.0;
    for (auto m : kAllMetrics)
        if (is_applicable(m, type)) sum += w[index_of(m)];
    if (sum <= 0.0) return std::nullopt;
    GroupMeans g;
    for (auto m : kAllMetrics) {
        if (!is_applicable(m, type)) continue;
        const double v = w[index_of(m)] / sum;
        if (group_of(m) == MetricGroup::Schema) {
            g.schema += v;
            ++g.schema_n;
        } else {
            g.instance += v;
            ++g.instance_n;
        }
    }
    if (g.schema_n) g.schema /= static_cast<double>(g.schema_n);
    if (g.instance_n) g.instance /= static_cast<double>(g.instance_n);
    return g;
}

const WeightVector& weights_of(const WeightConfig& config, const std::string& attribute) {
    return config.mode == WeightMode::PerAttribute ? config.weights_for(attribute) : config.global_weights;
}

}  // namespace

std::vector<TypeWeightGap> weight_gap_analysis(const WeightConfig& config, const TargetSchema& schema) {
    std::vector<TypeWeightGap> out;
    for (auto type : {DataType::String, DataType::Decimal, DataType::Date}) {
        TypeWeightGap g;
        g.type = type;
        for (const auto& attr : schema.attributes) {
            if (attr.data_type != type) continue;
            ++g.attributes;
            if (auto m = normalized_group_means(weights_of(config, attr.name), type)) {
                g.schema_avg += m->schema;
                g.instance_avg += m->instance;
            }
        }
        if (g.attributes == 0) continue;
        g.schema_avg /= static_cast<double>(g.attributes);
        g.instance_avg /= static_cast<double>(g.attributes);
        g.gap = g.instance_avg - g.schema_avg;
        out.push_back(g);
    }
    return out;
}

std::pair<std::vector<double>, std::vector<double>> group_weight_pairs(const WeightConfig& config,
                                                                       const TargetSchema& schema) {
    std::vector<double> s, i;
    for (const auto& attr : schema.attributes) {
        auto m = normalized_group_means(weights_of(config, attr.name), attr.data_type);
        if (!m || m->schema_n == 0 || m->instance_n == 0) continue;
        s.push_back(m->schema);
        i.push_back(m->instance);
    }
    return {s, i};
}

namespace {

nlohmann::json prf_json(const Prf& p) {
    return {{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1},
            {"tp", p.tp},               {"fp", p.fp},         {"fn", p.fn}};
}

nlohmann::json usability_json(const UsabilityReport& u) {
    return {{"column_count", u.column_count},
            {"row_count", u.row_count},
            {"null_cells", u.null_cells},
            {"total_cells", u.total_cells},
            {"null_fraction", u.null_fraction},
            {"per_column_null_fraction", u.per_column_null_fraction},
            {"empty", u.empty}};
}

nlohmann::json method_json(const MethodResult& m) {
    auto j = prf_json(m.score);
    j["name"] = m.name;
    j["usability"] = usability_json(m.usability);
    return j;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

}  // namespace

std::string report_to_json(const ComparisonReport& report) {
    nlohmann::json j;
    j["hybrid"] = nlohmann::json::array();
    for (const auto& m : report.hybrid) j["hybrid"].push_back(method_json(m));
    j["baseline"] = report.baseline ? method_json(*report.baseline) : nlohmann::json("skipped");
    if (report.weight_analysis) {
        const auto& w = *report.weight_analysis;
        j["weight_analysis"] = {{"statistic", w.statistic}, {"w_plus", w.w_plus},
                                {"w_minus", w.w_minus},     {"p_value", w.p_value},
                                {"n_effective", w.n_effective}, {"exact", w.exact}};
    } else {
        j["weight_analysis"] = "skipped";
    }
    nlohmann::json gaps = nlohmann::json::object();
    for (const auto& g : report.weight_gaps)
        gaps[std::string(to_string(g.type))] = {{"attributes", g.attributes},
                                                {"schema_avg", g.schema_avg},
                                                {"instance_avg", g.instance_avg},
                                                {"gap", g.gap}};
    j["weight_gaps"] = gaps;
    return j.dump(2) + "\n";
}

std::string report_to_text(const ComparisonReport& report) {
    std::vector<std::vector<std::string>> rows{{"Method", "F1", "Precision", "Recall", "Compactness", "Null %"}};
    auto add = [&](const MethodResult& m) {
        rows.push_back({m.name, fixed(m.score.f1, 3), fixed(m.score.precision, 3), fixed(m.score.recall, 3),
                        std::to_string(m.usability.column_count), fixed(100.0 * m.usability.null_fraction, 1)});
    };
    for (const auto& m : report.hybrid) add(m);
    if (report.baseline) add(*report.baseline);
    else rows.push_back({"FD baseline", "skipped", "skipped", "skipped", "skipped", "skipped"});

    std::vector<std::size_t> width(rows.front().size(), 0);
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    std::ostringstream out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t c = 0; c < rows[i].size(); ++c) {
            if (c) out << "  ";
            out << rows[i][c] << std::string(width[c] - rows[i][c].size(), ' ');
        }
        out << "\n";
        if (i == 0) {
            std::size_t total = 0;
            for (auto w : width) total += w;
            out << std::string(total + 2 * (width.size() - 1), '-') << "\n";
        }
    }
    if (!report.weight_gaps.empty()) {
        out << "\nAverage normalized weight by type\n";
        for (const auto& g : report.weight_gaps)
            out << to_string(g.type) << ": schema " << fixed(g.schema_avg, 3) << ", instance "
                << fixed(g.instance_avg, 3) << ", gap " << fixed(g.gap, 3) << "\n";
    }
    if (report.weight_analysis) {
        const auto& w = *report.weight_analysis;
        out << "\nWilcoxon signed-rank (instance vs schema weights): W = " << fixed(w.statistic, 1)
            << ", n = " << w.n_effective << ", p = " << fixed(w.p_value, 5) << (w.exact ? " (exact)" : " (normal)")
            << "\n";
    } else {
        out << "\nWilcoxon signed-rank: skipped\n";
    }
    return out.str();
}

namespace {

Prf prf_from_json(const nlohmann::json& j) {
    Prf p;
    p.precision = j.at("precision").get<double>();
    p.recall = j.at("recall").get<double>();
    p.f1 = j.at("f1").get<double>();
    p.tp = j.at("tp").get<std::size_t>();
    p.fp = j.at("fp").get<std::size_t>();
    p.fn = j.at("fn").get<std::size_t>();
    return p;
}

MethodResult method_from_json(const nlohmann::json& j) {
    MethodResult m;
    m.name = j.at("name").get<std::string>();
    m.score = prf_from_json(j);
    const auto& u = j.at("usability");
    m.usability.column_count = u.at("column_count").get<std::size_t>();
    m.usability.row_count = u.at("row_count").get<std::size_t>();
    m.usability.null_cells = u.at("null_cells").get<std::size_t>();
    m.usability.total_cells = u.at("total_cells").get<std::size_t>();
    m.usability.null_fraction = u.at("null_fraction").get<double>();
    m.usability.per_column_null_fraction = u.at("per_column_null_fraction").get<std::map<std::string, double>>();
    m.usability.empty = u.at("empty").get<bool>();
    return m;
}

}  // namespace

ComparisonReport report_from_json(std::string_view json_text) {
    ComparisonReport r;
    try {
        const auto j = nlohmann::json::parse(json_text);
        for (const auto& m : j.at("hybrid")) r.hybrid.push_back(method_from_json(m));
        if (!j.at("baseline").is_string()) r.baseline = method_from_json(j.at("baseline"));
        if (!j.at("weight_analysis").is_string()) {
            const auto& w = j.at("weight_analysis");
            WilcoxonResult res;
            res.statistic = w.at("statistic").get<double>();
            res.w_plus = w.at("w_plus").get<double>();
            res.w_minus = w.at("w_minus").get<double>();
            res.p_value = w.at("p_value").get<double>();
            res.n_effective = w.at("n_effective").get<std::size_t>();
            res.exact = w.at("exact").get<bool>();
            r.weight_analysis = res;
        }
        for (const auto& [type, g] : j.at("weight_gaps").items()) {
            TypeWeightGap gap;
            const auto t = parse_data_type(type);
            if (!t) throw EvaluationError("unknown data type '" + type + "' in report");
            gap.type = *t;
            gap.attributes = g.at("attributes").get<std::size_t>();
            gap.schema_avg = g.at("schema_avg").get<double>();
            gap.instance_avg = g.at("instance_avg").get<double>();
            gap.gap = g.at("gap").get<double>();
            r.weight_gaps.push_back(gap);
        }
    } catch (const nlohmann::json::exception& e) {
        throw EvaluationError(std::string("malformed report: ") + e.what());
    }
    std::sort(r.weight_gaps.begin(), r.weight_gaps.end(),
              [](const auto& a, const auto& b) { return static_cast<int>(a.type) < static_cast<int>(b.type); });
    return r;
}

void emit_report(const ComparisonReport& report, const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    auto write = [&](const std::string& name, const std::string& text) {
        const auto path = (std::filesystem::path(dir) / name).string();
        std::ofstream out(path, std::ios::binary);
        if (!out) throw EvaluationError("cannot write '" + path + "'");
        out << text;
        if (!out) throw EvaluationError("cannot write '" + path + "'");
    };
    write("report.json", report_to_json(report));
    write("report.txt", report_to_text(report));
}

}  // namespace tsmatch
