// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "tsmatch/csv.hpp"
#include "tsmatch/ingest.hpp"

using namespace tsmatch;
using namespace std::chrono;

TEST(Csv, QuotesAndLineEnds) {
    auto rows = csv::parse("\xEF\xBB\xBF" "a,\"b,c\"\r\n\"x\"\"y\",\n");
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0], (csv::Row{"a", "b,c"}));
    EXPECT_EQ(rows[1], (csv::Row{"x\"y", ""}));
    EXPECT_EQ(csv::parse(csv::format(rows)), rows);
}

TEST(LoadTable, DuplicateHeadersSuffixed) {
    auto t = load_table("Tenant,Archive,Total,Archive,Total\nA,1,2,3,4\n", "JLL");
    EXPECT_EQ(t.headers, (std::vector<std::string>{"Tenant", "Archive", "Total", "Archive.1", "Total.1"}));
}

TEST(LoadTable, HeaderOnly) {
    auto t = load_table("a,b\n", "X");
    EXPECT_EQ(t.row_count(), 0u);
    EXPECT_EQ(t.col_count(), 2u);
}

TEST(LoadTable, ShortRowsPaddedLongRowsRejected) {
    auto t = load_table("a,b,c\n1\n", "X");
    EXPECT_EQ(t.cells[0], (std::vector<std::string>{"1", "", ""}));
    try {
        load_table("a,b\n1,2\n1,2,3\n", "X");
        FAIL();
    } catch (const IngestError& e) {
        EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos) << e.what();
    }
    EXPECT_THROW(load_table("", "X"), IngestError);
}

TEST(LoadTable, Deterministic) {
    const std::string text = "x,y\n1,2\n3,4\n";
    EXPECT_EQ(load_table(text, "F", "d"), load_table(text, "F", "d"));
}

TEST(IsMissing, Markers) {
    for (auto s : {"", "  ", "-", "–", "n.a.", "N.A.", "na", "n/a", "NA", "null", " NULL "}) EXPECT_TRUE(is_missing(s)) << s;
    for (auto s : {"0", "nan", "x", "--"}) EXPECT_FALSE(is_missing(s)) << s;
}

TEST(ParseNumeric, SeparatorRules) {
    EXPECT_EQ(parse_numeric("€ 1,177,924"), 1177924.0);
    EXPECT_EQ(parse_numeric("156178,19"), 156178.19);
    EXPECT_EQ(parse_numeric("1.409"), 1409.0);
    EXPECT_EQ(parse_numeric("1.234.567,5"), 1234567.5);
    EXPECT_EQ(parse_numeric("1,234,567.25"), 1234567.25);
    EXPECT_EQ(parse_numeric("12.5"), 12.5);
    EXPECT_EQ(parse_numeric("-3"), -3.0);
    EXPECT_EQ(parse_numeric("250 sqm"), 250.0);
    EXPECT_EQ(parse_numeric("$ 7"), 7.0);
    EXPECT_FALSE(parse_numeric("3rd"));
    EXPECT_FALSE(parse_numeric("Yes"));
    EXPECT_FALSE(parse_numeric("€"));
}

TEST(ParseDate, Formats) {
    EXPECT_EQ(parse_date("6-3-2013"), Date{year{2013} / 3 / 6});
    EXPECT_EQ(parse_date("1-jan-2016"), Date{year{2016} / 1 / 1});
    EXPECT_EQ(parse_date("2015-01-19"), Date{year{2015} / 1 / 19});
    EXPECT_EQ(parse_date("01-01-08"), Date{year{2008} / 1 / 1});
    EXPECT_EQ(parse_date("01-01-51"), Date{year{1951} / 1 / 1});
    EXPECT_EQ(parse_date("19 jan 2015"), Date{year{2015} / 1 / 19});
    EXPECT_EQ(parse_date("3/mrt/2020"), Date{year{2020} / 3 / 3});
    EXPECT_EQ(parse_date("3-MEI-20"), Date{year{2020} / 5 / 3});
    EXPECT_FALSE(parse_date("31-2-2020"));
    EXPECT_FALSE(parse_date("not a date"));
    EXPECT_FALSE(parse_date("1409"));
}

TEST(CleanTokens, UnitsAndBrackets) {
    EXPECT_EQ(clean_tokens("Office space sq m"), (std::vector<std::string>{"office", "space"}));
    EXPECT_EQ(clean_tokens("Annual rent (excl. VAT)"), (std::vector<std::string>{"annual", "rent"}));
    EXPECT_EQ(clean_tokens("Total.1"), (std::vector<std::string>{"total"}));
    EXPECT_EQ(clean_text("Lease_Start/Date"), "lease start date");
}

TEST(ProfileColumn, Partitions) {
    auto t = load_table("Floor,Mixed,Empty\n3rd,1.409,-\n4th,n.a.,n.a.\n,6-3-2013,\n", "X");
    auto floor = profile_column(t, 0);
    EXPECT_EQ(floor.values_nonmissing.size(), 2u);
    EXPECT_TRUE(floor.numeric_values.empty());
    EXPECT_FALSE(floor.mean);

    auto mixed = profile_column(t, 1);
    EXPECT_EQ(mixed.values_nonmissing, (std::vector<std::string>{"1.409", "6-3-2013"}));
    EXPECT_EQ(mixed.numeric_values, (std::vector<double>{1409.0}));
    EXPECT_EQ(mixed.date_values.size(), 1u);
    EXPECT_DOUBLE_EQ(*mixed.mean, 1409.0);

    auto empty = profile_column(t, 2);
    EXPECT_TRUE(empty.values_nonmissing.empty());
    EXPECT_FALSE(empty.mean);
    EXPECT_THROW(profile_column(t, 3), IngestError);
}

TEST(ProfileColumn, FuzzNeverThrows) {
    std::mt19937_64 rng(7);
    const std::string alphabet = "0123456789.,-/ €$abcjanmrtsqm()%NA\"";
    for (int i = 0; i < 10000; ++i) {
        std::string header, cell;
        for (int k = rng() % 12; k > 0; --k) header += alphabet[rng() % alphabet.size()];
        for (int k = rng() % 12; k > 0; --k) cell += alphabet[rng() % alphabet.size()];
        SourceTable t{"F", "d", {header}, {{cell}}};
        auto p = profile_column(t, 0);
        EXPECT_LE(p.values_nonmissing.size(), 1u);
        EXPECT_EQ(p.mean.has_value(), !p.numeric_values.empty());
    }
}

TEST(Manifest, ResolvesRelativePaths) {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "tsmatch_manifest_test";
    fs::create_directories(dir / "docs");
    std::ofstream(dir / "docs" / "a.csv") << "h\n1\n";
    std::ofstream(dir / "m.yaml") << "documents:\n  - {path: docs/a.csv, format_id: F, document_id: a}\n";
    auto entries = load_manifest((dir / "m.yaml").string());
    ASSERT_EQ(entries.size(), 1u);
    auto docs = load_documents(entries);
    EXPECT_EQ(docs[0].format_id, "F");
    EXPECT_EQ(docs[0].document_id, "a");
    EXPECT_EQ(docs[0].cells[0][0], "1");
    fs::remove_all(dir);
}
