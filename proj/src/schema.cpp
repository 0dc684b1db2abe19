// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#include "tsmatch/schema.hpp"

#include <yaml-cpp/yaml.h>

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace tsmatch {

std::string_view to_string(DataType t) {
    switch (t) {
        case DataType::String: return "STRING";
        case DataType::Decimal: return "DECIMAL";
        case DataType::Date: return "DATE";
    }
    return "STRING";
}

std::optional<DataType> parse_data_type(std::string_view text) {
    std::string up;
    for (char c : text) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (up == "STRING") return DataType::String;
    if (up == "DECIMAL") return DataType::Decimal;
    if (up == "DATE") return DataType::Date;
    return std::nullopt;
}

std::optional<std::size_t> TargetSchema::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < attributes.size(); ++i)
        if (attributes[i].name == name) return i;
    return std::nullopt;
}

std::string normalize_attribute_name(std::string_view name) {
    std::string out;
    bool pending_sep = false;
    for (char c : name) {
        auto uc = static_cast<unsigned char>(c);
        if (std::isalnum(uc)) {
            if (pending_sep && !out.empty()) out.push_back('_');
            pending_sep = false;
            out.push_back(static_cast<char>(std::tolower(uc)));
        } else {
            pending_sep = true;
        }
    }
    return out;
}

AttributeSpec derive_stats(AttributeSpec spec) {
    if (!spec.numeric_profile) return spec;
    auto& p = *spec.numeric_profile;
    if (p.min > p.max)
        throw SchemaError("attribute '" + spec.name + "': range min > max");
    const double span = p.max - p.min;
    if (!p.mean) p.mean = p.min + 0.5 * span;
    if (!p.q1) p.q1 = p.min + 0.25 * span;
    if (!p.q3) p.q3 = p.min + 0.75 * span;
    return spec;
}

namespace {

[[noreturn]] void fail(const std::string& attr, const std::string& what) {
    throw SchemaError("attribute '" + attr + "': " + what);
}

double read_double(const YAML::Node& node, const std::string& attr, const char* key) {
    try {
        return node.as<double>();
    } catch (const YAML::Exception&) {
        fail(attr, std::string("'") + key + "' is not a number");
    }
}

Date read_date(const YAML::Node& node, const std::string& attr, const char* key) {
    auto d = parse_iso_date(node.as<std::string>());
    if (!d) fail(attr, std::string("'") + key + "' is not an ISO-8601 date");
    return *d;
}

void warn_unknown(const YAML::Node& map, std::initializer_list<std::string_view> known,
                  const std::string& where, std::vector<std::string>* warnings) {
    if (!warnings) return;
    for (const auto& kv : map) {
        auto key = kv.first.as<std::string>();
        bool ok = false;
        for (auto k : known) ok = ok || key == k;
        if (!ok) warnings->push_back(where + ": unknown key '" + key + "'");
    }
}

void validate(const AttributeSpec& a) {
    if (a.name.empty()) throw SchemaError("attribute with empty name");
    switch (a.data_type) {
        case DataType::Decimal: {
            if (!a.numeric_profile) fail(a.name, "DECIMAL attribute requires a range");
            const auto& p = *a.numeric_profile;
            if (!(p.min < p.max)) fail(a.name, "range min must be below max");
            if (!(p.min <= *p.q1 && *p.q1 <= *p.mean && *p.mean <= *p.q3 && *p.q3 <= p.max))
                fail(a.name, "range must satisfy min <= q1 <= mean <= q3 <= max");
            if (!(*p.q1 < *p.q3)) fail(a.name, "interquartile range must be positive");
            break;
        }
        case DataType::Date:
            if (!a.date_profile) fail(a.name, "DATE attribute requires a date_range");
            if (a.date_profile->max_date < a.date_profile->min_date)
                fail(a.name, "date_range min is after max");
            break;
        case DataType::String:
            break;
    }
}

}  // namespace

TargetSchema load_schema(std::string_view yaml_text, std::vector<std::string>* warnings) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml_text));
    } catch (const YAML::Exception& e) {
        throw SchemaError(std::string("malformed schema YAML: ") + e.what());
    }
    if (!root.IsMap()) throw SchemaError("schema document must be a mapping");
    warn_unknown(root, {"version", "attributes"}, "schema", warnings);

    TargetSchema schema;
    if (root["version"]) schema.version = root["version"].as<std::string>();

    const auto attrs = root["attributes"];
    if (!attrs || !attrs.IsSequence() || attrs.size() == 0) throw SchemaError("schema has no attributes");

    std::set<std::string> seen;
    for (const auto& node : attrs) {
        if (!node.IsMap()) throw SchemaError("attribute entry must be a mapping");
        if (!node["name"]) throw SchemaError("attribute without a name");
        AttributeSpec a;
        a.name = normalize_attribute_name(node["name"].as<std::string>());
        if (a.name.empty()) throw SchemaError("attribute with empty name");
        warn_unknown(node, {"name", "type", "synonyms", "range", "date_range"}, "attribute '" + a.name + "'",
                     warnings);

        if (!seen.insert(a.name).second) fail(a.name, "duplicate attribute name");

        if (!node["type"]) fail(a.name, "missing type");
        auto type = parse_data_type(node["type"].as<std::string>());
        if (!type) fail(a.name, "unknown type '" + node["type"].as<std::string>() + "'");
        a.data_type = *type;

        if (const auto syn = node["synonyms"]) {
            if (!syn.IsSequence()) fail(a.name, "synonyms must be a list");
            for (const auto& s : syn) a.synonyms.push_back(s.as<std::string>());
        }
        if (const auto r = node["range"]) {
            if (!r.IsMap() || !r["min"] || !r["max"]) fail(a.name, "range needs min and max");
            warn_unknown(r, {"min", "max", "mean", "q1", "q3"}, "attribute '" + a.name + "' range", warnings);
            NumericProfile p;
            p.min = read_double(r["min"], a.name, "min");
            p.max = read_double(r["max"], a.name, "max");
            if (r["mean"]) p.mean = read_double(r["mean"], a.name, "mean");
            if (r["q1"]) p.q1 = read_double(r["q1"], a.name, "q1");
            if (r["q3"]) p.q3 = read_double(r["q3"], a.name, "q3");
            a.numeric_profile = p;
        }
        if (const auto r = node["date_range"]) {
            if (!r.IsMap() || !r["min"] || !r["max"]) fail(a.name, "date_range needs min and max");
            warn_unknown(r, {"min", "max"}, "attribute '" + a.name + "' date_range", warnings);
            a.date_profile = DateProfile{read_date(r["min"], a.name, "min"), read_date(r["max"], a.name, "max")};
        }

        a = derive_stats(std::move(a));
        validate(a);
        schema.attributes.push_back(std::move(a));
    }
    return schema;
}

TargetSchema load_schema_file(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot open schema file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_schema(ss.str(), warnings);
}

std::string dump_schema(const TargetSchema& schema) {
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;
    if (!schema.version.empty()) out << YAML::Key << "version" << YAML::Value << YAML::DoubleQuoted << schema.version;
    out << YAML::Key << "attributes" << YAML::Value << YAML::BeginSeq;
    for (const auto& a : schema.attributes) {
        out << YAML::BeginMap;
        out << YAML::Key << "name" << YAML::Value << a.name;
        out << YAML::Key << "type" << YAML::Value << std::string(to_string(a.data_type));
        out << YAML::Key << "synonyms" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (const auto& s : a.synonyms) out << YAML::DoubleQuoted << s;
        out << YAML::EndSeq;
        if (a.numeric_profile) {
            const auto& p = *a.numeric_profile;
            out << YAML::Key << "range" << YAML::Value << YAML::Flow << YAML::BeginMap;
            out << YAML::Key << "min" << YAML::Value << p.min;
            out << YAML::Key << "max" << YAML::Value << p.max;
            if (p.mean) out << YAML::Key << "mean" << YAML::Value << *p.mean;
            if (p.q1) out << YAML::Key << "q1" << YAML::Value << *p.q1;
            if (p.q3) out << YAML::Key << "q3" << YAML::Value << *p.q3;
            out << YAML::EndMap;
        }
        if (a.date_profile) {
            out << YAML::Key << "date_range" << YAML::Value << YAML::Flow << YAML::BeginMap;
            out << YAML::Key << "min" << YAML::Value << to_iso(a.date_profile->min_date);
            out << YAML::Key << "max" << YAML::Value << to_iso(a.date_profile->max_date);
            out << YAML::EndMap;
        }
        out << YAML::EndMap;
    }
    out << YAML::EndSeq << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace tsmatch
