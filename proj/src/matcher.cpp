// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#include "tsmatch/matcher.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "tsmatch/csv.hpp"
#include "tsmatch/hungarian.hpp"

namespace tsmatch {

// ---------------------------------------------------------------------------
// Shared table helpers

std::string format_number(double v) {
    if (v == 0.0) return "0";  // also folds -0
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, p);
}

std::string to_csv(const Table& table) {
    std::vector<csv::Row> rows;
    rows.reserve(table.rows.size() + 1);
    rows.push_back(table.headers);
    for (const auto& r : table.rows) {
        csv::Row out;
        out.reserve(r.size());
        for (const auto& cell : r) out.push_back(cell.value_or(""));
        rows.push_back(std::move(out));
    }
    return csv::format(rows);
}

// ---------------------------------------------------------------------------
// Weights

const WeightVector& WeightConfig::weights_for(const std::string& attribute) const {
    if (mode == WeightMode::Global) return global_weights;
    auto it = per_attribute.find(attribute);
    if (it == per_attribute.end()) throw MatchError("no weights configured for attribute '" + attribute + "'");
    return it->second;
}

namespace {

void emit_weights(YAML::Emitter& out, const WeightVector& w) {
    out << YAML::Flow << YAML::BeginMap;
    for (auto m : kAllMetrics) out << YAML::Key << std::string(to_string(m)) << YAML::Value << w[index_of(m)];
    out << YAML::EndMap;
}

WeightVector read_weights(const YAML::Node& node, const std::string& where) {
    if (!node.IsMap()) throw MatchError(where + ": weights must be a mapping");
    WeightVector w = kUniformWeights;
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        auto m = parse_metric_id(key);
        if (!m) throw MatchError(where + ": unknown metric '" + key + "'");
        const double v = kv.second.as<double>();
        if (!(v >= 0.0 && v <= 1.0)) throw MatchError(where + ": weight for '" + key + "' outside [0,1]");
        w[index_of(*m)] = v;
    }
    return w;
}

}  // namespace

std::string dump_weight_config(const WeightConfig& config) {
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;
    out << YAML::Key << "mode" << YAML::Value << (config.mode == WeightMode::Global ? "GLOBAL" : "PER_ATTRIBUTE");
    out << YAML::Key << "alpha" << YAML::Value << config.alpha;
    out << YAML::Key << "theta" << YAML::Value << config.theta;
    out << YAML::Key << "global_weights" << YAML::Value;
    emit_weights(out, config.global_weights);
    if (!config.per_attribute.empty()) {
        out << YAML::Key << "per_attribute" << YAML::Value << YAML::BeginMap;
        for (const auto& [name, w] : config.per_attribute) {
            out << YAML::Key << name << YAML::Value;
            emit_weights(out, w);
        }
        out << YAML::EndMap;
    }
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

WeightConfig load_weight_config(std::string_view yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml_text));
    } catch (const YAML::Exception& e) {
        throw MatchError(std::string("malformed weight profile: ") + e.what());
    }
    if (!root.IsMap()) throw MatchError("weight profile must be a mapping");
    WeightConfig c;
    try {
        if (root["alpha"]) c.alpha = root["alpha"].as<double>();
        if (root["theta"]) c.theta = root["theta"].as<double>();
        if (root["mode"]) {
            const auto mode = root["mode"].as<std::string>();
            if (mode == "GLOBAL") c.mode = WeightMode::Global;
            else if (mode == "PER_ATTRIBUTE") c.mode = WeightMode::PerAttribute;
            else throw MatchError("unknown weight mode '" + mode + "'");
        }
        if (root["global_weights"]) c.global_weights = read_weights(root["global_weights"], "global_weights");
        if (const auto per = root["per_attribute"]) {
            for (const auto& kv : per) {
                const auto name = kv.first.as<std::string>();
                c.per_attribute[name] = read_weights(kv.second, "per_attribute." + name);
            }
        }
    } catch (const YAML::Exception& e) {
        throw MatchError(std::string("invalid weight profile: ") + e.what());
    }
    if (!(c.alpha >= 0.0 && c.alpha <= 1.0)) throw MatchError("alpha outside [0,1]");
    if (!(c.theta >= 0.0 && c.theta <= 1.0)) throw MatchError("theta outside [0,1]");
    return c;
}

WeightConfig load_weight_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MatchError("cannot open weight profile '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_weight_config(ss.str());
}

// ---------------------------------------------------------------------------
// Scoring

PairScore combine_scores(const MetricVector& raw, DataType type, const WeightVector& weights, double alpha) {
    double sum[2] = {0.0, 0.0};
    double acc[2] = {0.0, 0.0};
    for (auto m : kAllMetrics) {
        if (!is_applicable(m, type)) continue;
        const int g = group_of(m) == MetricGroup::Schema ? 0 : 1;
        sum[g] += weights[index_of(m)];
        acc[g] += weights[index_of(m)] * raw[index_of(m)];
    }
    PairScore s;
    s.breakdown = raw;
    s.schema_part = sum[0] > 0.0 ? acc[0] / sum[0] : 0.0;
    s.instance_part = sum[1] > 0.0 ? acc[1] / sum[1] : 0.0;
    s.hybrid = std::clamp(alpha * s.schema_part + (1.0 - alpha) * s.instance_part, 0.0, 1.0);
    return s;
}

PairScore score_pair(const ColumnProfile& column, const AttributeSpec& attr, const WeightConfig& config) {
    const auto& w = config.weights_for(attr.name);
    return combine_scores(compute_metrics(column, attr), attr.data_type, w, config.alpha);
}

ScoreMatrix build_matrix(const std::vector<ColumnProfile>& columns, const TargetSchema& schema,
                         const WeightConfig& config) {
    ScoreMatrix m;
    m.theta = config.theta;
    for (const auto& c : columns) m.column_headers.push_back(c.header_raw);
    for (const auto& a : schema.attributes) m.attribute_names.push_back(a.name);
    const std::size_t n = m.rows() * m.cols();
    m.scores.resize(n);
    m.mask.resize(n);
    m.breakdown.resize(n);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const auto s = score_pair(columns[r], schema.attributes[c], config);
            const std::size_t k = r * m.cols() + c;
            m.scores[k] = s.hybrid;
            m.mask[k] = s.hybrid < config.theta ? 1 : 0;
            m.breakdown[k] = s.breakdown;
        }
    }
    return m;
}

ScoreMatrix build_matrix(const SourceTable& table, const TargetSchema& schema, const WeightConfig& config) {
    return build_matrix(profile_table(table), schema, config);
}

ScoreMatrix make_matrix(std::vector<std::string> column_headers, std::vector<std::string> attribute_names,
                        const std::vector<std::vector<double>>& scores, double theta) {
    ScoreMatrix m;
    m.column_headers = std::move(column_headers);
    m.attribute_names = std::move(attribute_names);
    m.theta = theta;
    if (scores.size() != m.rows()) throw MatchError("score rows do not match column headers");
    for (const auto& row : scores) {
        if (row.size() != m.cols()) throw MatchError("score row width does not match attributes");
        for (double s : row) {
            m.scores.push_back(s);
            m.mask.push_back(s < theta ? 1 : 0);
            m.breakdown.push_back(MetricVector{});
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Assignment

double MappingResult::total_score() const {
    double t = 0.0;
    for (const auto& p : pairs) t += p.score;
    return t;
}

namespace {

MappingResult finish_mapping(const ScoreMatrix& m, const std::vector<std::pair<std::size_t, std::size_t>>& chosen) {
    MappingResult out;
    std::vector<char> col_used(m.rows(), 0), attr_used(m.cols(), 0);
    for (auto [r, c] : chosen) {
        const std::size_t k = r * m.cols() + c;
        out.pairs.push_back(MappedPair{r, c, m.attribute_names[c], m.scores[k], m.breakdown[k]});
        col_used[r] = 1;
        attr_used[c] = 1;
    }
    std::sort(out.pairs.begin(), out.pairs.end(), [](const auto& a, const auto& b) { return a.column < b.column; });
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (!col_used[r]) out.omitted_columns.push_back(r);
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!attr_used[c]) out.unfilled_attributes.push_back(m.attribute_names[c]);
    return out;
}

}  // namespace

MappingResult assign(const ScoreMatrix& m) {
    return finish_mapping(m, max_score_assignment(m.scores, m.mask, m.rows(), m.cols()));
}

MappingResult greedy_assign(const ScoreMatrix& m) {
    std::vector<char> taken(m.cols(), 0);
    std::vector<std::pair<std::size_t, std::size_t>> chosen;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::size_t best = m.cols();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (taken[c] || m.masked(r, c)) continue;
            if (best == m.cols() || m.score(r, c) > m.score(r, best)) best = c;
        }
        if (best == m.cols()) continue;
        taken[best] = 1;
        chosen.emplace_back(r, best);
    }
    return finish_mapping(m, chosen);
}

// ---------------------------------------------------------------------------
// Projection and output

StandardizedTable project_table(const SourceTable& table, const TargetSchema& schema, const MappingResult& mapping) {
    StandardizedTable out;
    for (const auto& a : schema.attributes) out.table.headers.push_back(a.name);
    out.table.rows.assign(table.row_count(), std::vector<std::optional<std::string>>(schema.attributes.size()));

    for (const auto& pair : mapping.pairs) {
        auto idx = schema.index_of(pair.attribute);
        if (!idx) throw MatchError("mapping refers to unknown attribute '" + pair.attribute + "'");
        if (pair.column >= table.col_count()) throw MatchError("mapping refers to a column outside the table");
        const auto type = schema.attributes[*idx].data_type;
        for (std::size_t r = 0; r < table.row_count(); ++r) {
            const std::string& raw = table.cells[r][pair.column];
            if (is_missing(raw)) continue;
            std::optional<std::string> value;
            switch (type) {
                case DataType::Decimal:
                    if (auto v = parse_numeric(raw)) value = format_number(*v);
                    break;
                case DataType::Date:
                    if (auto d = parse_date(raw)) value = to_iso(*d);
                    break;
                case DataType::String: {
                    auto b = raw.find_first_not_of(" \t\r\n");
                    auto e = raw.find_last_not_of(" \t\r\n");
                    value = raw.substr(b, e - b + 1);
                    break;
                }
            }
            if (!value) out.warnings.push_back(CellWarning{r, pair.attribute, raw});
            out.table.rows[r][*idx] = std::move(value);
        }
    }
    return out;
}

std::string mapping_to_json(const SourceTable& table, const MappingResult& mapping) {
    nlohmann::json j;
    j["document"] = table.document_id;
    j["format_id"] = table.format_id;
    auto pairs = nlohmann::json::array();
    for (const auto& p : mapping.pairs) {
        nlohmann::json breakdown;
        for (auto m : kAllMetrics) breakdown[std::string(to_string(m))] = p.breakdown[index_of(m)];
        pairs.push_back({{"source_column", table.headers.at(p.column)},
                         {"target_attribute", p.attribute},
                         {"score", p.score},
                         {"breakdown", breakdown}});
    }
    j["pairs"] = pairs;
    auto omitted = nlohmann::json::array();
    for (auto c : mapping.omitted_columns) omitted.push_back(table.headers.at(c));
    j["omitted_columns"] = omitted;
    j["unfilled_attributes"] = mapping.unfilled_attributes;
    return j.dump(2) + "\n";
}

}  // namespace tsmatch
