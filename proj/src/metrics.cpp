// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#include "tsmatch/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace tsmatch {

std::string_view to_string(MetricId m) {
    switch (m) {
        case MetricId::Levenshtein: return "levenshtein";
        case MetricId::Jaccard: return "jaccard";
        case MetricId::Synonym: return "synonym";
        case MetricId::NumericType: return "numeric_type";
        case MetricId::DateType: return "date_type";
        case MetricId::Range: return "range";
        case MetricId::Ks: return "ks";
    }
    return "";
}

std::optional<MetricId> parse_metric_id(std::string_view name) {
    for (auto m : kAllMetrics)
        if (to_string(m) == name) return m;
    return std::nullopt;
}

bool is_applicable(MetricId m, DataType t) {
    switch (m) {
        case MetricId::Levenshtein:
        case MetricId::Jaccard:
        case MetricId::Synonym: return true;
        case MetricId::NumericType:
        case MetricId::Range:
        case MetricId::Ks: return t == DataType::Decimal;
        case MetricId::DateType: return t == DataType::Date;
    }
    return false;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

double indel_ratio(std::string_view a, std::string_view b) {
    const std::size_t total = a.size() + b.size();
    if (total == 0) return 1.0;
    // longest common subsequence, rolling row
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        std::swap(prev, cur);
    }
    return 2.0 * static_cast<double>(prev[b.size()]) / static_cast<double>(total);
}

namespace {

std::set<std::string> token_set(std::string_view s) {
    std::set<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string t; in >> t;) out.insert(t);
    return out;
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out.push_back(' ');
        out += p;
    }
    return out;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    std::size_t inter = 0;
    for (const auto& t : a) inter += b.count(t);
    return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

double levenshtein_similarity(std::string_view a, std::string_view b) {
    const std::size_t longest = std::max(a.size(), b.size());
    if (longest == 0) return 1.0;
    return 1.0 - static_cast<double>(edit_distance(a, b)) / static_cast<double>(longest);
}

// Name first, then synonyms; every candidate is cleaned like a header.
template <typename Fn>
double best_over_candidates(const AttributeSpec& attr, Fn&& score) {
    double best = score(clean_text(attr.name));
    for (const auto& s : attr.synonyms) best = std::max(best, score(clean_text(s)));
    return std::clamp(best, 0.0, 1.0);
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

double token_set_ratio(std::string_view a, std::string_view b) {
    const auto ta = token_set(a);
    const auto tb = token_set(b);
    if (ta.empty() && tb.empty()) return 1.0;
    if (ta.empty() || tb.empty()) return 0.0;

    std::vector<std::string> inter, only_a, only_b;
    std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(inter));
    std::set_difference(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(only_a));
    std::set_difference(tb.begin(), tb.end(), ta.begin(), ta.end(), std::back_inserter(only_b));

    const std::string t0 = join(inter);
    auto with = [&](const std::vector<std::string>& rest) {
        std::vector<std::string> parts = inter;
        parts.insert(parts.end(), rest.begin(), rest.end());
        return join(parts);
    };
    const std::string t1 = with(only_a);
    const std::string t2 = with(only_b);

    // ratio("", x) is 0 for non-empty x, so an empty intersection only
    // contributes through the t1/t2 pairing.
    auto ratio = [](const std::string& x, const std::string& y) {
        if (x.empty() != y.empty()) return 0.0;
        return indel_ratio(x, y);
    };
    return std::max({ratio(t0, t1), ratio(t0, t2), ratio(t1, t2)});
}

double sim_levenshtein(const ColumnProfile& column, const AttributeSpec& attr) {
    return best_over_candidates(attr, [&](const std::string& c) { return levenshtein_similarity(column.header_clean, c); });
}

double sim_jaccard(const ColumnProfile& column, const AttributeSpec& attr) {
    const std::set<std::string> header(column.header_tokens.begin(), column.header_tokens.end());
    return best_over_candidates(attr, [&](const std::string& c) { return jaccard(header, token_set(c)); });
}

double sim_synonym(const ColumnProfile& column, const AttributeSpec& attr) {
    return best_over_candidates(attr, [&](const std::string& c) { return token_set_ratio(column.header_clean, c); });
}

double sim_numeric_type(const ColumnProfile& column, const AttributeSpec& attr) {
    if (!is_applicable(MetricId::NumericType, attr.data_type)) return 0.0;
    const auto& values = column.values_nonmissing;
    if (values.empty()) return 0.0;
    std::size_t has_digit = 0, starts_digit = 0;
    for (const auto& v : values) {
        if (std::any_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; })) ++has_digit;
        auto first = std::find_if(v.begin(), v.end(), [](char c) { return c != ' ' && c != '\t'; });
        if (first != v.end() && *first >= '0' && *first <= '9') ++starts_digit;
    }
    const double n = static_cast<double>(values.size());
    return clamp01(0.7 * static_cast<double>(has_digit) / n + 0.3 * static_cast<double>(starts_digit) / n);
}

double sim_date_type(const ColumnProfile& column, const AttributeSpec& attr) {
    if (!is_applicable(MetricId::DateType, attr.data_type)) return 0.0;
    if (column.values_nonmissing.empty()) return 0.0;
    return clamp01(static_cast<double>(column.date_values.size()) /
                   static_cast<double>(column.values_nonmissing.size()));
}

double sim_range(const ColumnProfile& column, const AttributeSpec& attr) {
    if (!is_applicable(MetricId::Range, attr.data_type) || !attr.numeric_profile) return 0.0;
    if (column.numeric_values.empty() || !column.mean) return 0.0;
    const auto& p = *attr.numeric_profile;
    const double q1 = p.q1.value_or(p.min), q3 = p.q3.value_or(p.max);
    const double iqr = q3 - q1;
    if (!(iqr > 0.0)) return 0.0;
    const double mu_t = p.mean.value_or(0.5 * (p.min + p.max));
    const double closeness = std::max(0.0, 1.0 - std::abs(*column.mean - mu_t) / iqr);
    const auto inside = std::count_if(column.numeric_values.begin(), column.numeric_values.end(),
                                      [&](double x) { return x >= q1 && x <= q3; });
    const double fraction = static_cast<double>(inside) / static_cast<double>(column.numeric_values.size());
    return clamp01(0.5 * closeness + 0.5 * fraction);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double sim_ks(const ColumnProfile& column, const AttributeSpec& attr) {
    if (!is_applicable(MetricId::Ks, attr.data_type) || !attr.numeric_profile) return 0.0;
    if (column.numeric_values.empty()) return 0.0;
    const auto& p = *attr.numeric_profile;
    const double sigma = p.sigma();
    if (!(sigma > 0.0)) return 0.0;
    const double mu = p.mean.value_or(0.5 * (p.min + p.max));

    std::vector<double> xs = column.numeric_values;
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double cdf = normal_cdf((xs[i] - mu) / sigma);
        const double above = static_cast<double>(i + 1) / n - cdf;
        const double below = cdf - static_cast<double>(i) / n;
        d = std::max({d, std::abs(above), std::abs(below)});
    }
    return clamp01(1.0 - d);
}

double compute_metric(MetricId m, const ColumnProfile& column, const AttributeSpec& attr) {
    switch (m) {
        case MetricId::Levenshtein: return sim_levenshtein(column, attr);
        case MetricId::Jaccard: return sim_jaccard(column, attr);
        case MetricId::Synonym: return sim_synonym(column, attr);
        case MetricId::NumericType: return sim_numeric_type(column, attr);
        case MetricId::DateType: return sim_date_type(column, attr);
        case MetricId::Range: return sim_range(column, attr);
        case MetricId::Ks: return sim_ks(column, attr);
    }
    return 0.0;
}

MetricVector compute_metrics(const ColumnProfile& column, const AttributeSpec& attr) {
    MetricVector out{};
    for (auto m : kAllMetrics) out[index_of(m)] = compute_metric(m, column, attr);
    return out;
}

}  // namespace tsmatch
