// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tsmatch/metrics.hpp"

using namespace tsmatch;

namespace {

ColumnProfile column(const std::string& header, std::vector<std::string> values = {}) {
    SourceTable t{"F", "d", {header}, {}};
    for (auto& v : values) t.cells.push_back({v});
    return profile_column(t, 0);
}

AttributeSpec attr(const std::string& name, std::vector<std::string> synonyms = {}, DataType type = DataType::String) {
    return AttributeSpec{name, type, std::move(synonyms), {}, {}};
}

AttributeSpec decimal_attr(double min, double max) {
    AttributeSpec a{"x", DataType::Decimal, {}, derive_stats(AttributeSpec{"x", DataType::Decimal, {}, NumericProfile{min, max}, {}}).numeric_profile, {}};
    return a;
}

ColumnProfile numeric_column(const std::vector<double>& xs) {
    ColumnProfile c;
    c.header_raw = "n";
    c.numeric_values = xs;
    for (double x : xs) c.values_nonmissing.push_back(std::to_string(x));
    c.values_raw = c.values_nonmissing;
    if (!xs.empty()) {
        double s = 0;
        for (double x : xs) s += x;
        c.mean = s / static_cast<double>(xs.size());
    }
    return c;
}

}  // namespace

TEST(Metrics, Groups) {
    EXPECT_EQ(group_of(MetricId::Synonym), MetricGroup::Schema);
    EXPECT_EQ(group_of(MetricId::NumericType), MetricGroup::Instance);
    EXPECT_TRUE(is_applicable(MetricId::Ks, DataType::Decimal));
    EXPECT_FALSE(is_applicable(MetricId::Ks, DataType::Date));
    EXPECT_TRUE(is_applicable(MetricId::DateType, DataType::Date));
    EXPECT_FALSE(is_applicable(MetricId::DateType, DataType::String));
    EXPECT_TRUE(is_applicable(MetricId::Levenshtein, DataType::String));
    for (auto m : kAllMetrics) EXPECT_EQ(parse_metric_id(to_string(m)), m);
}

TEST(Levenshtein, Examples) {
    EXPECT_NEAR(sim_levenshtein(column("Commence Date"), attr("commencement_date")), 1.0 - 4.0 / 17.0, 1e-12);
    EXPECT_DOUBLE_EQ(sim_levenshtein(column("Tenant"), attr("tenant")), 1.0);
    EXPECT_DOUBLE_EQ(sim_levenshtein(column("abc"), attr("xyz")), 0.0);
    EXPECT_DOUBLE_EQ(sim_levenshtein(column("xyz"), attr("q", {"XYZ"})), 1.0);
}

TEST(Levenshtein, MatchesDpOracle) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        std::string a, b;
        for (int k = rng() % 10; k > 0; --k) a += static_cast<char>('a' + rng() % 4);
        for (int k = rng() % 10; k > 0; --k) b += static_cast<char>('a' + rng() % 4);
        EXPECT_EQ(edit_distance(a, b), oracle::edit_distance(a, b));
        if (a.empty() || b.empty()) continue;
        EXPECT_DOUBLE_EQ(sim_levenshtein(column(a), attr(b)), oracle::lev_similarity(a, b)) << a << " / " << b;
    }
}

TEST(Jaccard, Examples) {
    EXPECT_NEAR(sim_jaccard(column("Tenant Name"), attr("name_of_tenant")), 2.0 / 3.0, 1e-12);
    EXPECT_DOUBLE_EQ(sim_jaccard(column("Name Tenant"), attr("tenant_name")), 1.0);
    EXPECT_DOUBLE_EQ(sim_jaccard(column("Floor"), attr("annual_rent")), 0.0);
    EXPECT_DOUBLE_EQ(sim_jaccard(column("(sq m)"), attr("annual_rent")), 0.0);
}

TEST(Synonym, Examples) {
    EXPECT_DOUBLE_EQ(sim_synonym(column("Lease Start Date"), attr("x", {"Start Date Lease"})), 1.0);
    EXPECT_DOUBLE_EQ(sim_synonym(column("Tenant"), attr("tenant")), 1.0);
    EXPECT_LE(sim_synonym(column("Floor"), attr("x", {"Annual Rent"})), 0.35);
    EXPECT_DOUBLE_EQ(token_set_ratio("office area", "area office"), 1.0);
    EXPECT_DOUBLE_EQ(token_set_ratio("rent", "annual rent"), 1.0);
}

TEST(SchemaMetrics, Symmetric) {
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"lease start", "start date"}, {"tenant", "tenant name"}, {"office area", "archive"}, {"total", "total rent"}};
    for (const auto& [a, b] : pairs) {
        EXPECT_DOUBLE_EQ(sim_levenshtein(column(a), attr(b)), sim_levenshtein(column(b), attr(a)));
        EXPECT_DOUBLE_EQ(sim_jaccard(column(a), attr(b)), sim_jaccard(column(b), attr(a)));
        EXPECT_DOUBLE_EQ(sim_synonym(column(a), attr(b)), sim_synonym(column(b), attr(a)));
    }
}

TEST(SchemaMetrics, MoreSynonymsNeverHurt) {
    auto c = column("Annual Rent excl VAT");
    auto small = attr("passing_rent", {"Rent"});
    auto big = attr("passing_rent", {"Rent", "Annual Rent"});
    EXPECT_LE(sim_levenshtein(c, small), sim_levenshtein(c, big));
    EXPECT_LE(sim_jaccard(c, small), sim_jaccard(c, big));
    EXPECT_LE(sim_synonym(c, small), sim_synonym(c, big));
}

TEST(NumericType, Examples) {
    auto a = attr("floor", {}, DataType::Decimal);
    a.numeric_profile = NumericProfile{0, 10, 5, 2.5, 7.5};
    EXPECT_DOUBLE_EQ(sim_numeric_type(column("f", {"3rd", "4th"}), a), 1.0);
    EXPECT_DOUBLE_EQ(sim_numeric_type(column("f", {"Yes", "No"}), a), 0.0);
    EXPECT_NEAR(sim_numeric_type(column("f", {"A1", "B2", "three", "4"}), a), 0.6, 1e-12);
    EXPECT_DOUBLE_EQ(sim_numeric_type(column("f", {"-", ""}), a), 0.0);
    EXPECT_DOUBLE_EQ(sim_numeric_type(column("f", {"3"}), attr("s")), 0.0);
}

TEST(DateType, Examples) {
    auto a = attr("d", {}, DataType::Date);
    EXPECT_DOUBLE_EQ(sim_date_type(column("c", {"2015-01-19", "19 jan 2015"}), a), 1.0);
    EXPECT_DOUBLE_EQ(sim_date_type(column("c", {"Yes", "No"}), a), 0.0);
    EXPECT_DOUBLE_EQ(sim_date_type(column("c", {"1-jan-2016", "not a date"}), a), 0.5);
}

TEST(Range, Examples) {
    auto a = decimal_attr(200, 5000);
    EXPECT_DOUBLE_EQ(sim_range(numeric_column({2600, 2600}), a), 1.0);
    EXPECT_DOUBLE_EQ(sim_range(numeric_column({1400, 3800}), a), 1.0);
    EXPECT_DOUBLE_EQ(sim_range(numeric_column({2600 + 2400 + 1, 2600 + 2400 + 1}), a), 0.0);
    EXPECT_DOUBLE_EQ(sim_range(numeric_column({}), a), 0.0);
}

TEST(Ks, Examples) {
    auto a = decimal_attr(200, 5000);
    const double mu = 2600, sigma = 2400 / 1.349;
    EXPECT_NEAR(sim_ks(numeric_column({mu}), a), 0.5, 1e-12);
    EXPECT_LT(sim_ks(numeric_column({mu + 10 * sigma, mu + 10 * sigma}), a), 1e-9);

    // Sample points at the normal quantiles (i - 0.5) / n.
    for (int n : {1, 4, 10}) {
        std::vector<double> xs;
        for (int i = 1; i <= n; ++i) {
            const double p = (i - 0.5) / n;
            double lo = -10, hi = 10;
            for (int k = 0; k < 200; ++k) {
                const double m = 0.5 * (lo + hi);
                (normal_cdf(m) < p ? lo : hi) = m;
            }
            xs.push_back(mu + sigma * 0.5 * (lo + hi));
        }
        EXPECT_NEAR(sim_ks(numeric_column(xs), a), 1.0 - 0.5 / n, 1e-9);
    }
}

TEST(Ks, MatchesBruteForceOracle) {
    auto a = decimal_attr(200, 5000);
    const double mu = 2600, sigma = 2400 / 1.349;
    std::mt19937_64 rng(5);
    std::normal_distribution<double> draw(2000, 1500);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> xs(1 + rng() % 20);
        for (auto& x : xs) x = std::round(draw(rng));
        EXPECT_NEAR(sim_ks(numeric_column(xs), a), 1.0 - oracle::ks_distance(xs, mu, sigma), 1e-9);
    }
}

TEST(Metrics, FuzzInUnitInterval) {
    std::mt19937_64 rng(3);
    const std::vector<std::string> cells = {"", "-", "3rd", "1.409", "€ 1,177,924", "6-3-2013", "x", "0", "-7",
                                            "1e308", "1-jan-2016", "n.a.", "12,5", "999999999999"};
    const std::vector<std::string> words = {"total", "rent", "", "(sq m)", "office", "area", "date", "tenant", "a"};
    for (int i = 0; i < 10000; ++i) {
        std::string header;
        for (int k = rng() % 4; k > 0; --k) header += words[rng() % words.size()] + " ";
        std::vector<std::string> values(rng() % 6);
        for (auto& v : values) v = cells[rng() % cells.size()];
        auto c = column(header, values);
        AttributeSpec a;
        a.name = words[rng() % words.size()] + "_x";
        a.data_type = static_cast<DataType>(rng() % 3);
        for (int k = rng() % 3; k > 0; --k) a.synonyms.push_back(words[rng() % words.size()]);
        const double lo = static_cast<double>(rng() % 1000) - 500;
        a.numeric_profile = derive_stats(AttributeSpec{"x", DataType::Decimal, {}, NumericProfile{lo, lo + 1 + rng() % 5000}, {}}).numeric_profile;
        for (auto m : kAllMetrics) {
            const double v = compute_metric(m, c, a);
            ASSERT_GE(v, 0.0) << to_string(m);
            ASSERT_LE(v, 1.0) << to_string(m);
            if (!is_applicable(m, a.data_type)) ASSERT_EQ(v, 0.0);
        }
    }
}
