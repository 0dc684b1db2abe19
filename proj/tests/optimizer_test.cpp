// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#include <gtest/gtest.h>

#include <random>

#include "tsmatch/optimizer.hpp"
#include "tsmatch/synth.hpp"

using namespace tsmatch;

namespace {

struct Corpus {
    TargetSchema schema;
    std::vector<SourceTable> docs;
    GroundTruth truth;
};

const Corpus& small_corpus() {
    static const Corpus c = [] {
        Corpus out;
        out.schema = reference_schema();
        auto ds = generate_dataset(reference_layouts(), 1, 12, 17);
        for (const auto& d : ds.documents) out.docs.push_back(load_table(d.csv, d.format_id, d.document_id));
        out.truth = ds.ground_truth;
        return out;
    }();
    return c;
}

TargetSchema only(const TargetSchema& s, const std::string& name) {
    TargetSchema out{s.version, {s.attributes[*s.index_of(name)]}};
    return out;
}

GroundTruth truth_for(const GroundTruth& t, const std::string& name) {
    GroundTruth out;
    for (const auto& e : t.entries)
        if (e.target_attribute == name) out.entries.push_back(e);
    return out;
}

}  // namespace

TEST(Prf, Arithmetic) {
    auto p = prf_from_counts(3, 1, 1);
    EXPECT_DOUBLE_EQ(p.precision, 0.75);
    EXPECT_DOUBLE_EQ(p.recall, 0.75);
    EXPECT_DOUBLE_EQ(p.f1, 0.75);
    auto z = prf_from_counts(0, 0, 4);
    EXPECT_EQ(z.precision, 0.0);
    EXPECT_EQ(z.f1, 0.0);
}

TEST(GroundTruth, CsvRoundTripAndValidation) {
    const std::string text = "format,source_column,target_attribute\nJLL,Tenant,tenant_name\nJLL,Total.1,total_area\n";
    auto t = load_ground_truth(text);
    ASSERT_EQ(t.entries.size(), 2u);
    EXPECT_EQ(t.target_for("JLL", "Total.1"), "total_area");
    EXPECT_FALSE(t.target_for("JLL", "Comments"));
    EXPECT_EQ(ground_truth_to_csv(t), text);
    EXPECT_NO_THROW(validate_ground_truth(t, reference_schema()));
    EXPECT_THROW(validate_ground_truth(load_ground_truth("format,source_column,target_attribute\nA,b,nope\n"),
                                       reference_schema()),
                 OptimizerError);
    EXPECT_THROW(load_ground_truth("format,source_column,target_attribute\nA,b,x\nA,b,y\n"), OptimizerError);
}

TEST(Tensor, Dimensions) {
    const auto& c = small_corpus();
    auto t = precompute_tensor(c.docs, c.schema, 2);
    std::size_t cols = 0;
    for (const auto& d : c.docs) cols += d.col_count();
    EXPECT_EQ(t.document_count(), 5u);
    EXPECT_EQ(t.entry_count(), cols * 17 * 7);
    EXPECT_LE(t.entry_count(), 5u * 29 * 17 * 7);
    EXPECT_EQ(precompute_tensor({}, c.schema).entry_count(), 0u);
}

TEST(Tensor, MatchesDirectMetrics) {
    const auto& c = small_corpus();
    auto t = precompute_tensor(c.docs, c.schema, 3);
    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        const std::size_t d = rng() % c.docs.size();
        const std::size_t col = rng() % c.docs[d].col_count();
        const std::size_t a = rng() % c.schema.attributes.size();
        const auto direct = compute_metrics(profile_column(c.docs[d], col), c.schema.attributes[a]);
        EXPECT_EQ(t.cell(d, col, a), direct);
    }
}

TEST(Tensor, WorkerCountDoesNotMatter) {
    const auto& c = small_corpus();
    auto a = precompute_tensor(c.docs, c.schema, 1);
    auto b = precompute_tensor(c.docs, c.schema, 4);
    for (std::size_t d = 0; d < a.document_count(); ++d)
        for (std::size_t col = 0; col < a.column_count(d); ++col)
            for (std::size_t k = 0; k < a.attribute_count(); ++k) ASSERT_EQ(a.cell(d, col, k), b.cell(d, col, k));
}

TEST(EvaluateConfig, TensorAgreesWithDirect) {
    const auto& c = small_corpus();
    auto t = precompute_tensor(c.docs, c.schema);
    std::mt19937_64 rng(2);
    const std::vector<double> grid = {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
    for (int i = 0; i < 20; ++i) {
        WeightConfig cfg;
        cfg.alpha = grid[rng() % 4];
        cfg.theta = grid[rng() % 3];
        if (i % 2) {
            cfg.mode = WeightMode::PerAttribute;
            for (const auto& a : c.schema.attributes) {
                WeightVector w;
                for (auto& x : w) x = grid[rng() % 4];
                cfg.per_attribute[a.name] = w;
            }
        } else {
            for (auto& x : cfg.global_weights) x = grid[rng() % 4];
        }
        auto lhs = evaluate_config(t, c.truth, cfg);
        auto rhs = evaluate_config_direct(c.docs, c.schema, c.truth, cfg);
        EXPECT_EQ(lhs.tp, rhs.tp) << i;
        EXPECT_EQ(lhs.fp, rhs.fp) << i;
        EXPECT_EQ(lhs.fn, rhs.fn) << i;
    }
}

TEST(EvaluateConfig, Degenerate) {
    const auto& c = small_corpus();
    auto t = precompute_tensor(c.docs, c.schema);
    // Nothing reaches theta 1 here: the only column is a near miss.
    TargetSchema s{"t", {AttributeSpec{"tenant_name", DataType::String, {}, {}, {}}}};
    std::vector<SourceTable> docs = {SourceTable{"A", "a", {"Tenant Nam"}, {{"x"}}}};
    auto toy = precompute_tensor(docs, s);
    WeightConfig strict;
    strict.theta = 1.0;
    ASSERT_TRUE(match_from_tensor(toy, strict)[0].pairs.empty());
    auto p = evaluate_config(toy, GroundTruth{{{"A", "Tenant Nam", "tenant_name"}}}, strict);
    EXPECT_EQ(p.precision, 0.0);
    EXPECT_EQ(p.recall, 0.0);
    EXPECT_EQ(p.f1, 0.0);
    EXPECT_EQ(p.fn, 1u);
    GroundTruth bad = c.truth;
    bad.entries.push_back({"JLL", "No Such Column", "tenant_name"});
    EXPECT_THROW(evaluate_config(t, bad, WeightConfig{}), OptimizerError);
    GroundTruth unknown_format{{{"ZZZ", "Tenant", "tenant_name"}}};
    EXPECT_THROW(evaluate_config(t, unknown_format, WeightConfig{}), OptimizerError);
}

TEST(EvaluateConfig, PerfectPredictions) {
    // One attribute, one column named exactly like it.
    TargetSchema s{"t", {AttributeSpec{"tenant_name", DataType::String, {}, {}, {}}}};
    std::vector<SourceTable> docs = {SourceTable{"A", "a", {"Tenant Name", "zz"}, {{"x", "y"}}}};
    GroundTruth truth{{{"A", "Tenant Name", "tenant_name"}}};
    auto t = precompute_tensor(docs, s);
    EXPECT_EQ(evaluate_config(t, truth, WeightConfig{}).f1, 1.0);
}

TEST(GridSpec, Values) {
    GridSpec g;
    EXPECT_EQ(g.weight_values(), (std::vector<double>{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}));
    EXPECT_EQ(g.alpha_values().size(), 5u);
    g.grid_size = 3;
    EXPECT_EQ(g.theta_values(), (std::vector<double>{0.0, 0.5, 1.0}));
    g.grid_size = 1;
    EXPECT_THROW(g.weight_values(), OptimizerError);
}

TEST(GridSpec, CandidateCounts) {
    GridSpec g;
    EXPECT_EQ(weight_candidate_count(DataType::String, g), 63u);
    EXPECT_EQ(weight_candidate_count(DataType::Decimal, g), 4095u);
    EXPECT_EQ(weight_candidate_count(DataType::Date, g), 255u);
    g.grid_size = 2;
    g.metrics = {MetricId::Levenshtein, MetricId::Jaccard};
    EXPECT_EQ(weight_candidate_count(DataType::String, g), 3u);
}

TEST(ParamSearch, ToyOnlyZeroThetaMaps) {
    TargetSchema s{"t", {AttributeSpec{"tenant_name", DataType::String, {}, {}, {}}}};
    std::vector<SourceTable> docs = {SourceTable{"A", "a", {"t"}, {{"x"}}}, SourceTable{"B", "b", {"t"}, {{"y"}}}};
    GroundTruth truth{{{"A", "t", "tenant_name"}, {"B", "t", "tenant_name"}}};
    auto t = precompute_tensor(docs, s);
    GridSpec g;
    g.mode = SearchMode::ParamsOnly;
    auto r = grid_search_params(t, truth, g);
    EXPECT_EQ(r.theta, 0.0);
    EXPECT_EQ(r.score.f1, 1.0);
    EXPECT_EQ(r.stats.configs_evaluated, 25u);
    for (double theta : g.theta_values()) {
        if (theta == 0.0) continue;
        for (double alpha : g.alpha_values()) {
            WeightConfig cfg;
            cfg.alpha = alpha;
            cfg.theta = theta;
            EXPECT_EQ(evaluate_config(t, truth, cfg).f1, 0.0);
        }
    }
}

TEST(ParamSearch, NeverBelowDefault) {
    const auto& c = small_corpus();
    auto t = precompute_tensor(c.docs, c.schema);
    GridSpec g;
    g.mode = SearchMode::ParamsOnly;
    auto r = grid_search_params(t, c.truth, g, WeightConfig{}, 2);
    EXPECT_GE(r.score.f1, evaluate_config(t, c.truth, WeightConfig{}).f1);
    WeightConfig best;
    best.alpha = r.alpha;
    best.theta = r.theta;
    EXPECT_DOUBLE_EQ(evaluate_config(t, c.truth, best).f1, r.score.f1);
    auto again = grid_search_params(t, c.truth, g, WeightConfig{}, 1);
    EXPECT_EQ(again.alpha, r.alpha);
    EXPECT_EQ(again.theta, r.theta);
}

TEST(WeightSearch, SingleAttributeEqualsBruteForce) {
    const auto& c = small_corpus();
    for (const std::string name : {"tenant_name", "expiry_date"}) {
        const auto s = only(c.schema, name);
        const auto truth = truth_for(c.truth, name);
        auto t = precompute_tensor(c.docs, s);
        GridSpec g;
        g.grid_size = 3;
        g.metrics = {MetricId::Levenshtein, MetricId::Synonym, MetricId::DateType};
        auto r = grid_search_weights(t, truth, g, 0.5, 0.5);

        double best = 0.0;
        std::size_t scanned = 0;
        const auto vals = g.weight_values();
        for (double a : vals)
            for (double b : vals)
                for (double d : vals) {
                    WeightVector w = kUniformWeights;
                    w[index_of(MetricId::Levenshtein)] = a;
                    w[index_of(MetricId::Synonym)] = b;
                    const bool date = s.attributes[0].data_type == DataType::Date;
                    if (date) w[index_of(MetricId::DateType)] = d;
                    else if (d != vals[0]) continue;
                    if (a == 0 && b == 0 && (!date || d == 0)) continue;
                    ++scanned;
                    WeightConfig cfg;
                    cfg.mode = WeightMode::PerAttribute;
                    cfg.per_attribute[name] = w;
                    best = std::max(best, evaluate_config(t, truth, cfg).f1);
                }
        EXPECT_EQ(r.score.f1, best) << name;
        EXPECT_EQ(r.stats.configs_evaluated, scanned) << name;
        EXPECT_EQ(evaluate_config(t, truth, r.config).f1, r.score.f1);
    }
}

TEST(WeightSearch, ImprovesAndIsDeterministic) {
    const auto& c = small_corpus();
    auto t = precompute_tensor(c.docs, c.schema);
    GridSpec g;
    g.grid_size = 2;
    auto a = grid_search_weights(t, c.truth, g, 0.5, 0.5, 1);
    auto b = grid_search_weights(t, c.truth, g, 0.5, 0.5, 3);
    EXPECT_GE(a.score.f1, a.baseline.f1);
    EXPECT_EQ(a.baseline.f1, evaluate_config(t, c.truth, WeightConfig{}).f1);
    EXPECT_EQ(a.config, b.config);
    EXPECT_EQ(a.score.f1, b.score.f1);
    EXPECT_EQ(a.stats.configs_evaluated, b.stats.configs_evaluated);
    EXPECT_EQ(a.config.mode, WeightMode::PerAttribute);
    EXPECT_EQ(a.config.per_attribute.size(), 17u);

    std::size_t expected = 0;
    for (const auto& attr : c.schema.attributes) expected += weight_candidate_count(attr.data_type, g);
    EXPECT_EQ(a.stats.configs_evaluated, expected);
    EXPECT_EQ(a.steps.size(), 17u);
    EXPECT_EQ(evaluate_config(t, c.truth, a.config).f1, a.score.f1);
}

TEST(Runtime, Report) {
    EXPECT_EQ(runtime_report(SearchStats{}).configs_evaluated, 0u);
    auto r = runtime_report(SearchStats{12, 0.5});
    EXPECT_EQ(r.configs_evaluated, 12u);
    EXPECT_EQ(r.wall_seconds, 0.5);
}
