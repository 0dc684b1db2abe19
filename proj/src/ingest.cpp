// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#include "tsmatch/ingest.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "tsmatch/csv.hpp"

namespace tsmatch {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string_view trim(std::string_view s) {
    // non-breaking spaces (U+00A0) count as whitespace
    for (;;) {
        if (!s.empty() && is_space(s.front())) s.remove_prefix(1);
        else if (s.starts_with("\xC2\xA0")) s.remove_prefix(2);
        else break;
    }
    for (;;) {
        if (!s.empty() && is_space(s.back())) s.remove_suffix(1);
        else if (s.ends_with("\xC2\xA0")) s.remove_suffix(2);
        else break;
    }
    return s;
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
    for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size())
        s.replace(pos, from.size(), to);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::optional<double> to_double(const std::string& s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

// Splits a digit/separator body into digit groups; true if every group after
// the first has exactly three digits and the first has 1-3 digits without a
// leading zero.
bool valid_grouping(std::string_view body, char sep) {
    std::size_t start = 0;
    bool first = true;
    while (true) {
        auto pos = body.find(sep, start);
        auto group = body.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        if (first) {
            if (group.empty() || group.size() > 3) return false;
            if (group.size() > 1 && group[0] == '0') return false;
            if (group == "0") return false;
            first = false;
        } else if (group.size() != 3) {
            return false;
        }
        if (pos == std::string_view::npos) return true;
        start = pos + 1;
    }
}

std::string strip(std::string_view s, char c) {
    std::string out;
    for (char x : s)
        if (x != c) out.push_back(x);
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Tables

SourceTable load_table(std::string_view csv_text, std::string format_id, std::string document_id) {
    if (trim(csv_text).empty()) throw IngestError("empty input");
    std::vector<csv::Row> rows;
    try {
        rows = csv::parse(csv_text);
    } catch (const csv::ParseError& e) {
        throw IngestError(e.what());
    }
    if (rows.empty()) throw IngestError("empty input");

    SourceTable t;
    t.format_id = std::move(format_id);
    t.document_id = std::move(document_id);

    std::set<std::string> used;
    std::vector<std::string> raw;
    for (const auto& h : rows.front()) raw.emplace_back(trim(h));
    for (const auto& h : raw) used.insert(h);
    std::set<std::string> taken;
    for (const auto& h : raw) {
        std::string name = h;
        if (taken.contains(name)) {
            for (int k = 1;; ++k) {
                std::string candidate = h + "." + std::to_string(k);
                if (!taken.contains(candidate) && !used.contains(candidate)) {
                    name = candidate;
                    break;
                }
            }
        }
        taken.insert(name);
        t.headers.push_back(std::move(name));
    }

    const std::size_t cols = t.headers.size();
    for (std::size_t r = 1; r < rows.size(); ++r) {
        auto& row = rows[r];
        if (row.size() > cols)
            throw IngestError("row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                              " cells but the header has " + std::to_string(cols));
        row.resize(cols);
        t.cells.push_back(std::move(row));
    }
    return t;
}

SourceTable load_table_file(const std::string& path, std::string format_id, std::string document_id) {
    if (document_id.empty()) document_id = std::filesystem::path(path).stem().string();
    try {
        return load_table(read_file(path), std::move(format_id), std::move(document_id));
    } catch (const IngestError& e) {
        throw IngestError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Cell parsing

bool is_missing(std::string_view cell) {
    static const std::array<std::string_view, 7> markers = {"", "-", "\xE2\x80\x93", "n.a.", "na", "n/a", "null"};
    const auto t = lower(trim(cell));
    return std::find(markers.begin(), markers.end(), t) != markers.end();
}

std::optional<double> parse_numeric(std::string_view cell) {
    std::string s = lower(trim(cell));
    for (std::string_view token : {"\xE2\x82\xAC", "$", "m\xC2\xB2", "\xC2\xA0"}) replace_all(s, token, " ");
    s.erase(std::remove_if(s.begin(), s.end(), is_space), s.end());
    for (std::string_view unit : {"sqm", "pp"}) replace_all(s, unit, "");
    replace_all(s, "\xE2\x88\x92", "-");  // unicode minus

    bool negative = false;
    std::string_view body = s;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (body.empty() || !is_digit(body.front()) || !is_digit(body.back())) return std::nullopt;
    for (char c : body)
        if (!is_digit(c) && c != '.' && c != ',') return std::nullopt;

    const auto dots = std::count(body.begin(), body.end(), '.');
    const auto commas = std::count(body.begin(), body.end(), ',');

    std::string normalized;
    if (dots == 0 && commas == 0) {
        normalized = std::string(body);
    } else if (dots > 0 && commas > 0) {
        const auto last = body.find_last_of(".,");
        const char dec = body[last];
        const char grp = dec == '.' ? ',' : '.';
        if ((dec == '.' ? dots : commas) != 1) return std::nullopt;
        const auto int_part = body.substr(0, last);
        if (int_part.find(dec) != std::string_view::npos) return std::nullopt;
        if (!valid_grouping(int_part, grp)) return std::nullopt;
        normalized = strip(int_part, grp) + "." + std::string(body.substr(last + 1));
    } else {
        const char sep = dots > 0 ? '.' : ',';
        const auto count = dots > 0 ? dots : commas;
        const auto last = body.rfind(sep);
        const auto trailing = body.size() - last - 1;
        if (count == 1 && trailing != 3) {
            normalized = std::string(body.substr(0, last)) + "." + std::string(body.substr(last + 1));
        } else if (valid_grouping(body, sep)) {
            normalized = strip(body, sep);
        } else if (count == 1) {
            // three trailing digits but an implausible leading group, e.g. "0.125"
            normalized = std::string(body.substr(0, last)) + "." + std::string(body.substr(last + 1));
        } else {
            return std::nullopt;
        }
    }
    auto v = to_double(normalized);
    if (!v) return std::nullopt;
    return negative ? -*v : *v;
}

namespace {

std::optional<unsigned> month_from_name(std::string_view name) {
    struct Entry {
        std::string_view name;
        unsigned month;
    };
    static const std::array<Entry, 35> table = {{
        {"jan", 1},      {"january", 1},   {"januari", 1},  {"feb", 2},      {"february", 2},
        {"februari", 2}, {"mar", 3},       {"mrt", 3},      {"march", 3},    {"maart", 3},
        {"apr", 4},      {"april", 4},     {"may", 5},      {"mei", 5},      {"jun", 6},
        {"june", 6},     {"juni", 6},      {"jul", 7},      {"july", 7},     {"juli", 7},
        {"aug", 8},      {"august", 8},    {"augustus", 8}, {"sep", 9},      {"sept", 9},
        {"september", 9}, {"oct", 10},     {"okt", 10},     {"october", 10}, {"oktober", 10},
        {"nov", 11},     {"november", 11}, {"dec", 12},     {"december", 12}, {"sep.", 9},
    }};
    for (const auto& e : table)
        if (e.name == name) return e.month;
    return std::nullopt;
}

std::optional<int> small_int(std::string_view s, std::size_t min_len, std::size_t max_len) {
    if (s.size() < min_len || s.size() > max_len) return std::nullopt;
    int v = 0;
    for (char c : s) {
        if (!is_digit(c)) return std::nullopt;
        v = v * 10 + (c - '0');
    }
    return v;
}

std::optional<int> parse_year(std::string_view s) {
    if (s.size() == 4) return small_int(s, 4, 4);
    if (s.size() == 2) {
        auto yy = small_int(s, 2, 2);
        if (!yy) return std::nullopt;
        return *yy < 50 ? 2000 + *yy : 1900 + *yy;
    }
    return std::nullopt;
}

std::optional<Date> make_date(int y, int m, int d) {
    if (m < 1 || m > 12 || d < 1 || d > 31) return std::nullopt;
    Date out{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
             std::chrono::day{static_cast<unsigned>(d)}};
    if (!out.ok()) return std::nullopt;
    return out;
}

// Splits on any of `seps`; runs of separators count as one.
std::vector<std::string_view> split_any(std::string_view s, std::string_view seps) {
    std::vector<std::string_view> parts;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && seps.find(s[i]) != std::string_view::npos) ++i;
        std::size_t j = i;
        while (j < s.size() && seps.find(s[j]) == std::string_view::npos) ++j;
        if (j > i) parts.push_back(s.substr(i, j - i));
        i = j;
    }
    return parts;
}

}  // namespace

std::optional<Date> parse_date(std::string_view cell) {
    const std::string s = lower(trim(cell));
    if (s.empty()) return std::nullopt;

    if (auto iso = parse_iso_date(s)) return iso;

    // d-m-y and d-m-yy
    {
        auto parts = split_any(s, "-/.");
        bool only_digits = std::all_of(s.begin(), s.end(), [](char c) { return is_digit(c) || c == '-' || c == '/' || c == '.'; });
        if (only_digits && parts.size() == 3 && is_digit(s.front()) && is_digit(s.back())) {
            auto d = small_int(parts[0], 1, 2);
            auto m = small_int(parts[1], 1, 2);
            auto y = parse_year(parts[2]);
            if (d && m && y)
                if (auto out = make_date(*y, *m, *d)) return out;
        }
    }

    // d-monthname-y
    {
        auto parts = split_any(s, "-/ ");
        if (parts.size() == 3) {
            auto d = small_int(parts[0], 1, 2);
            auto name = parts[1];
            if (name.ends_with('.')) name.remove_suffix(1);
            auto m = month_from_name(name);
            auto y = parse_year(parts[2]);
            if (d && m && y)
                if (auto out = make_date(*y, static_cast<int>(*m), *d)) return out;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Header cleaning and profiling

std::vector<std::string> clean_tokens(std::string_view text) {
    std::string s(trim(text));

    // dedup suffix such as "Total.1"
    if (auto dot = s.rfind('.'); dot != std::string::npos && dot > 0 && dot + 1 < s.size() &&
                                 !is_digit(s[dot - 1]) &&
                                 std::all_of(s.begin() + static_cast<long>(dot) + 1, s.end(), is_digit)) {
        s.erase(dot);
    }
    s = lower(s);

    // bracketed annotations are dropped wholesale
    std::string no_brackets;
    int depth = 0;
    for (char c : s) {
        if (c == '(' || c == '[' || c == '{') {
            ++depth;
        } else if (c == ')' || c == ']' || c == '}') {
            if (depth > 0) --depth;
            no_brackets.push_back(' ');
        } else if (depth == 0) {
            no_brackets.push_back(c);
        }
    }
    s = std::move(no_brackets);

    for (std::string_view sym : {"m\xC2\xB2", "\xE2\x82\xAC", "\xC2\xA0", "\xE2\x80\x93", "\xE2\x80\x94"})
        replace_all(s, sym, " ");
    for (auto& c : s) {
        auto uc = static_cast<unsigned char>(c);
        if (uc < 0x80 && !std::isalnum(uc)) c = ' ';
    }

    std::vector<std::string> raw;
    std::istringstream in(s);
    for (std::string tok; in >> tok;) raw.push_back(tok);

    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == "sq" && i + 1 < raw.size() && raw[i + 1] == "m") {
            ++i;
            continue;
        }
        if (raw[i] == "sqm" || raw[i] == "m2") continue;
        tokens.push_back(raw[i]);
    }
    return tokens;
}

std::string clean_text(std::string_view text) {
    auto tokens = clean_tokens(text);
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

ColumnProfile profile_column(const SourceTable& table, std::size_t index) {
    if (index >= table.col_count())
        throw IngestError("column index " + std::to_string(index) + " out of range (table has " +
                          std::to_string(table.col_count()) + " columns)");
    ColumnProfile p;
    p.header_raw = table.headers[index];
    p.header_tokens = clean_tokens(p.header_raw);
    p.header_clean = clean_text(p.header_raw);
    p.values_raw.reserve(table.row_count());
    for (const auto& row : table.cells) {
        const auto& cell = row[index];
        p.values_raw.push_back(cell);
        if (is_missing(cell)) continue;
        p.values_nonmissing.push_back(cell);
        if (auto v = parse_numeric(cell)) p.numeric_values.push_back(*v);
        if (auto d = parse_date(cell)) p.date_values.push_back(*d);
    }
    if (!p.numeric_values.empty())
        p.mean = std::accumulate(p.numeric_values.begin(), p.numeric_values.end(), 0.0) /
                 static_cast<double>(p.numeric_values.size());
    return p;
}

std::vector<ColumnProfile> profile_table(const SourceTable& table) {
    std::vector<ColumnProfile> out;
    out.reserve(table.col_count());
    for (std::size_t c = 0; c < table.col_count(); ++c) out.push_back(profile_column(table, c));
    return out;
}

// ---------------------------------------------------------------------------
// Manifest

std::vector<ManifestEntry> load_manifest(const std::string& manifest_path) {
    YAML::Node root;
    try {
        root = YAML::LoadFile(manifest_path);
    } catch (const YAML::Exception& e) {
        throw IngestError("manifest '" + manifest_path + "': " + e.what());
    }
    const auto docs = root["documents"];
    if (!docs || !docs.IsSequence()) throw IngestError("manifest '" + manifest_path + "' has no documents list");
    const auto base = std::filesystem::path(manifest_path).parent_path();
    std::vector<ManifestEntry> out;
    std::set<std::string> ids;
    for (const auto& d : docs) {
        if (!d["path"] || !d["format_id"])
            throw IngestError("manifest '" + manifest_path + "': entries need path and format_id");
        ManifestEntry e;
        std::filesystem::path p = d["path"].as<std::string>();
        e.path = (p.is_absolute() ? p : base / p).lexically_normal().string();
        e.format_id = d["format_id"].as<std::string>();
        e.document_id = d["document_id"] ? d["document_id"].as<std::string>() : p.stem().string();
        if (!ids.insert(e.document_id).second)
            throw IngestError("manifest '" + manifest_path + "': duplicate document id '" + e.document_id + "'");
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<SourceTable> load_documents(const std::vector<ManifestEntry>& entries) {
    std::vector<SourceTable> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(load_table_file(e.path, e.format_id, e.document_id));
    return out;
}

}  // namespace tsmatch
