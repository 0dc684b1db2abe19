// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#include "tsmatch/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "tsmatch/csv.hpp"
#include "tsmatch/hungarian.hpp"
#include "tsmatch/parallel.hpp"

namespace tsmatch {

// ---------------------------------------------------------------------------
// Tensor

MetricTensor precompute_tensor(const std::vector<SourceTable>& documents, const TargetSchema& schema,
                               unsigned workers) {
    MetricTensor t;
    for (const auto& a : schema.attributes) {
        t.attribute_names.push_back(a.name);
        t.attribute_types.push_back(a.data_type);
    }
    std::size_t total = 0;
    for (const auto& d : documents) {
        t.document_ids.push_back(d.document_id);
        t.format_ids.push_back(d.format_id);
        t.column_headers.push_back(d.headers);
        t.offsets_.push_back(total);
        total += d.col_count() * schema.attributes.size();
    }
    t.cells_.resize(total);

    parallel_chunks(documents.size(), workers, [&](std::size_t begin, std::size_t end, unsigned) {
        for (std::size_t d = begin; d < end; ++d) {
            const auto profiles = profile_table(documents[d]);
            for (std::size_t c = 0; c < profiles.size(); ++c)
                for (std::size_t a = 0; a < schema.attributes.size(); ++a)
                    t.cells_[t.offsets_[d] + c * schema.attributes.size() + a] =
                        compute_metrics(profiles[c], schema.attributes[a]);
        }
    });
    return t;
}

// ---------------------------------------------------------------------------
// Ground truth

std::optional<std::string> GroundTruth::target_for(const std::string& format_id, const std::string& column) const {
    for (const auto& e : entries)
        if (e.format_id == format_id && e.source_column == column) return e.target_attribute;
    return std::nullopt;
}

GroundTruth load_ground_truth(std::string_view csv_text) {
    std::vector<csv::Row> rows;
    try {
        rows = csv::parse(csv_text);
    } catch (const csv::ParseError& e) {
        throw OptimizerError(std::string("ground truth: ") + e.what());
    }
    if (rows.empty()) throw OptimizerError("ground truth is empty");
    const auto& h = rows.front();
    if (h.size() < 3 || h[0] != "format" || h[1] != "source_column" || h[2] != "target_attribute")
        throw OptimizerError("ground truth header must be format,source_column,target_attribute");
    GroundTruth gt;
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() < 3) throw OptimizerError("ground truth row " + std::to_string(i) + " has fewer than 3 fields");
        if (!seen.emplace(r[0], r[1]).second)
            throw OptimizerError("ground truth maps " + r[0] + "/" + r[1] + " more than once");
        gt.entries.push_back(TruthEntry{r[0], r[1], r[2]});
    }
    return gt;
}

GroundTruth load_ground_truth_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw OptimizerError("cannot open ground truth '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_ground_truth(ss.str());
}

std::string ground_truth_to_csv(const GroundTruth& truth) {
    std::vector<csv::Row> rows{{"format", "source_column", "target_attribute"}};
    for (const auto& e : truth.entries) rows.push_back({e.format_id, e.source_column, e.target_attribute});
    return csv::format(rows);
}

void validate_ground_truth(const GroundTruth& truth, const TargetSchema& schema) {
    for (const auto& e : truth.entries)
        if (!schema.index_of(e.target_attribute))
            throw OptimizerError("ground truth target '" + e.target_attribute + "' is not in the schema");
}

Prf prf_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
    Prf p;
    p.tp = tp;
    p.fp = fp;
    p.fn = fn;
    p.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    p.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    p.f1 = p.precision + p.recall > 0.0 ? 2.0 * p.precision * p.recall / (p.precision + p.recall) : 0.0;
    return p;
}

namespace {

// Per document: the truth attribute index of every column (-1 = omit).
struct BoundTruth {
    std::vector<std::vector<int>> target;
    std::size_t pairs = 0;
};

BoundTruth bind_truth(const std::vector<std::string>& formats, const std::vector<std::vector<std::string>>& headers,
                      const std::vector<std::string>& attributes, const GroundTruth& truth) {
    BoundTruth b;
    b.target.resize(formats.size());
    for (std::size_t d = 0; d < formats.size(); ++d) b.target[d].assign(headers[d].size(), -1);

    for (const auto& e : truth.entries) {
        auto a = std::find(attributes.begin(), attributes.end(), e.target_attribute);
        if (a == attributes.end())
            throw OptimizerError("ground truth target '" + e.target_attribute + "' is not in the schema");
        bool format_seen = false;
        for (std::size_t d = 0; d < formats.size(); ++d) {
            if (formats[d] != e.format_id) continue;
            format_seen = true;
            auto c = std::find(headers[d].begin(), headers[d].end(), e.source_column);
            if (c == headers[d].end())
                throw OptimizerError("ground truth column '" + e.source_column + "' not found in a " + e.format_id +
                                     " document");
            b.target[d][static_cast<std::size_t>(c - headers[d].begin())] = static_cast<int>(a - attributes.begin());
            ++b.pairs;
        }
        if (!format_seen) throw OptimizerError("ground truth format '" + e.format_id + "' has no documents");
    }
    return b;
}

BoundTruth bind_truth(const MetricTensor& t, const GroundTruth& truth) {
    return bind_truth(t.format_ids, t.column_headers, t.attribute_names, truth);
}

struct Counts {
    std::size_t tp = 0, fp = 0;
};

Counts count_pairs(const std::vector<std::pair<std::size_t, std::size_t>>& chosen, const std::vector<int>& target) {
    Counts c;
    for (auto [r, a] : chosen) {
        if (target[r] == static_cast<int>(a)) ++c.tp;
        else ++c.fp;
    }
    return c;
}

// Hybrid scores and threshold mask of one document under some config.
struct DocGrid {
    std::size_t rows = 0, cols = 0;
    std::vector<double> scores;
    std::vector<char> mask;
};

void fill_attribute(DocGrid& g, const MetricTensor& t, std::size_t doc, std::size_t attr, const WeightVector& w,
                    double alpha, double theta) {
    for (std::size_t r = 0; r < g.rows; ++r) {
        const double s = combine_scores(t.cell(doc, r, attr), t.attribute_types[attr], w, alpha).hybrid;
        g.scores[r * g.cols + attr] = s;
        g.mask[r * g.cols + attr] = s < theta ? 1 : 0;
    }
}

std::vector<DocGrid> build_grids(const MetricTensor& t, const WeightConfig& config) {
    std::vector<DocGrid> grids(t.document_count());
    for (std::size_t d = 0; d < t.document_count(); ++d) {
        auto& g = grids[d];
        g.rows = t.column_count(d);
        g.cols = t.attribute_count();
        g.scores.assign(g.rows * g.cols, 0.0);
        g.mask.assign(g.rows * g.cols, 1);
        for (std::size_t a = 0; a < g.cols; ++a)
            fill_attribute(g, t, d, a, config.weights_for(t.attribute_names[a]), config.alpha, config.theta);
    }
    return grids;
}

Prf score_grids(const std::vector<DocGrid>& grids, const BoundTruth& truth) {
    std::size_t tp = 0, fp = 0;
    for (std::size_t d = 0; d < grids.size(); ++d) {
        const auto& g = grids[d];
        const auto c = count_pairs(max_score_assignment(g.scores, g.mask, g.rows, g.cols), truth.target[d]);
        tp += c.tp;
        fp += c.fp;
    }
    return prf_from_counts(tp, fp, truth.pairs - tp);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<double> evenly_spaced(std::size_t g, double lo, double hi) {
    if (g < 2) throw OptimizerError("grid size must be at least 2");
    std::vector<double> v;
    for (std::size_t i = 0; i < g; ++i)
        v.push_back(i + 1 == g ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(g - 1));
    return v;
}

std::vector<double> with_default(std::vector<double> v, double lo, double hi) {
    constexpr double kDefault = 0.5;
    if (kDefault >= lo && kDefault <= hi && std::find(v.begin(), v.end(), kDefault) == v.end()) v.push_back(kDefault);
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

Prf evaluate_config(const MetricTensor& tensor, const GroundTruth& truth, const WeightConfig& config) {
    return score_grids(build_grids(tensor, config), bind_truth(tensor, truth));
}

Prf evaluate_config_direct(const std::vector<SourceTable>& documents, const TargetSchema& schema,
                           const GroundTruth& truth, const WeightConfig& config) {
    std::vector<std::string> formats, attributes;
    std::vector<std::vector<std::string>> headers;
    for (const auto& d : documents) {
        formats.push_back(d.format_id);
        headers.push_back(d.headers);
    }
    for (const auto& a : schema.attributes) attributes.push_back(a.name);
    const auto bound = bind_truth(formats, headers, attributes, truth);

    std::size_t tp = 0, fp = 0;
    for (std::size_t d = 0; d < documents.size(); ++d) {
        const auto mapping = assign(build_matrix(documents[d], schema, config));
        for (const auto& p : mapping.pairs) {
            if (bound.target[d][p.column] == static_cast<int>(p.attribute_index)) ++tp;
            else ++fp;
        }
    }
    return prf_from_counts(tp, fp, bound.pairs - tp);
}

std::vector<MappingResult> match_from_tensor(const MetricTensor& tensor, const WeightConfig& config) {
    std::vector<MappingResult> out;
    for (std::size_t d = 0; d < tensor.document_count(); ++d) {
        ScoreMatrix m;
        m.column_headers = tensor.column_headers[d];
        m.attribute_names = tensor.attribute_names;
        m.theta = config.theta;
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t a = 0; a < m.cols(); ++a) {
                const auto s = combine_scores(tensor.cell(d, r, a), tensor.attribute_types[a],
                                              config.weights_for(tensor.attribute_names[a]), config.alpha);
                m.scores.push_back(s.hybrid);
                m.mask.push_back(s.hybrid < config.theta ? 1 : 0);
                m.breakdown.push_back(s.breakdown);
            }
        out.push_back(assign(m));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Grid search

std::vector<double> GridSpec::weight_values() const { return evenly_spaced(grid_size, 0.0, 1.0); }

std::vector<double> GridSpec::alpha_values() const {
    return with_default(evenly_spaced(grid_size, alpha_min, alpha_max), alpha_min, alpha_max);
}

std::vector<double> GridSpec::theta_values() const {
    return with_default(evenly_spaced(grid_size, theta_min, theta_max), theta_min, theta_max);
}

ParamSearchResult grid_search_params(const MetricTensor& tensor, const GroundTruth& truth, const GridSpec& grid,
                                     const WeightConfig& weights, unsigned workers) {
    const auto start = std::chrono::steady_clock::now();
    const auto bound = bind_truth(tensor, truth);

    // schema/instance parts do not depend on alpha or theta
    std::vector<std::vector<std::pair<double, double>>> parts(tensor.document_count());
    for (std::size_t d = 0; d < tensor.document_count(); ++d)
        for (std::size_t r = 0; r < tensor.column_count(d); ++r)
            for (std::size_t a = 0; a < tensor.attribute_count(); ++a) {
                const auto s = combine_scores(tensor.cell(d, r, a), tensor.attribute_types[a],
                                              weights.weights_for(tensor.attribute_names[a]), 0.0);
                parts[d].emplace_back(s.schema_part, s.instance_part);
            }

    std::vector<std::pair<double, double>> points;  // (theta, alpha), scan order = tie-break order
    for (double theta : grid.theta_values())
        for (double alpha : grid.alpha_values()) points.emplace_back(theta, alpha);

    std::vector<Prf> results(points.size());
    parallel_chunks(points.size(), workers, [&](std::size_t begin, std::size_t end, unsigned) {
        std::vector<DocGrid> grids(tensor.document_count());
        for (std::size_t i = begin; i < end; ++i) {
            const auto [theta, alpha] = points[i];
            for (std::size_t d = 0; d < tensor.document_count(); ++d) {
                auto& g = grids[d];
                g.rows = tensor.column_count(d);
                g.cols = tensor.attribute_count();
                g.scores.resize(parts[d].size());
                g.mask.resize(parts[d].size());
                for (std::size_t k = 0; k < parts[d].size(); ++k) {
                    const double s =
                        std::clamp(alpha * parts[d][k].first + (1.0 - alpha) * parts[d][k].second, 0.0, 1.0);
                    g.scores[k] = s;
                    g.mask[k] = s < theta ? 1 : 0;
                }
            }
            results[i] = score_grids(grids, bound);
        }
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < points.size(); ++i)
        if (results[i].f1 > results[best].f1) best = i;

    ParamSearchResult out;
    out.theta = points[best].first;
    out.alpha = points[best].second;
    out.score = results[best];
    out.stats.configs_evaluated = points.size();
    out.stats.wall_seconds = seconds_since(start);
    return out;
}

std::size_t weight_candidate_count(DataType type, const GridSpec& grid) {
    std::size_t k = 0;
    for (auto m : grid.metrics)
        if (is_applicable(m, type)) ++k;
    if (k == 0) return 0;
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= grid.grid_size;
    return total - 1;
}

WeightSearchResult grid_search_weights(const MetricTensor& tensor, const GroundTruth& truth, const GridSpec& grid,
                                       double alpha, double theta, unsigned workers) {
    const auto start = std::chrono::steady_clock::now();
    const auto bound = bind_truth(tensor, truth);
    const auto values = grid.weight_values();
    const std::size_t g = values.size();

    WeightSearchResult out;
    out.config.alpha = alpha;
    out.config.theta = theta;
    out.config.mode = WeightMode::PerAttribute;
    for (const auto& name : tensor.attribute_names) out.config.per_attribute[name] = kUniformWeights;

    auto base = build_grids(tensor, out.config);
    out.baseline = score_grids(base, bound);
    Prf current = out.baseline;

    for (std::size_t a = 0; a < tensor.attribute_count(); ++a) {
        const auto& name = tensor.attribute_names[a];
        const auto type = tensor.attribute_types[a];
        std::vector<std::size_t> searched;
        for (auto m : grid.metrics)
            if (is_applicable(m, type) && std::find(searched.begin(), searched.end(), index_of(m)) == searched.end())
                searched.push_back(index_of(m));

        const std::size_t count = weight_candidate_count(type, grid);
        AttributeSearchStep step;
        step.attribute = name;
        step.candidates = count;
        step.chosen = out.config.per_attribute[name];
        step.f1 = current.f1;
        if (count == 0) {
            out.steps.push_back(step);
            continue;
        }

        const WeightVector incumbent = out.config.per_attribute[name];
        // candidate i (1-based) spells its weights in base g, first metric most significant
        auto candidate = [&](std::size_t i) {
            WeightVector w = incumbent;
            for (std::size_t j = searched.size(); j-- > 0;) {
                w[searched[j]] = values[i % g];
                i /= g;
            }
            return w;
        };
        auto distance = [&](const WeightVector& w) {
            double s = 0.0;
            for (auto m : searched) s += (w[m] - kUniformWeights[m]) * (w[m] - kUniformWeights[m]);
            return s;
        };

        struct Best {
            Prf score;
            double dist = 0.0;
            std::size_t index = 0;
        };
        auto better = [](const Best& x, const Best& y) {
            if (x.score.f1 != y.score.f1) return x.score.f1 > y.score.f1;
            if (x.dist != y.dist) return x.dist < y.dist;
            return x.index < y.index;
        };

        std::vector<Best> chunk_best(std::max(1u, workers));
        std::vector<char> chunk_used(chunk_best.size(), 0);
        parallel_chunks(count, workers, [&](std::size_t begin, std::size_t end, unsigned worker) {
            auto grids = base;
            Best local;
            bool have = false;
            for (std::size_t i = begin; i < end; ++i) {
                const auto w = candidate(i + 1);
                for (std::size_t d = 0; d < grids.size(); ++d) fill_attribute(grids[d], tensor, d, a, w, alpha, theta);
                Best b{score_grids(grids, bound), distance(w), i + 1};
                if (!have || better(b, local)) {
                    local = b;
                    have = true;
                }
            }
            chunk_best[worker] = local;
            chunk_used[worker] = have ? 1 : 0;
        });

        std::optional<Best> best;
        for (std::size_t k = 0; k < chunk_best.size(); ++k)
            if (chunk_used[k] && (!best || better(chunk_best[k], *best))) best = chunk_best[k];

        const auto chosen = candidate(best->index);
        out.config.per_attribute[name] = chosen;
        for (std::size_t d = 0; d < base.size(); ++d) fill_attribute(base[d], tensor, d, a, chosen, alpha, theta);
        current = best->score;
        out.stats.configs_evaluated += count;

        step.chosen = chosen;
        step.f1 = current.f1;
        out.steps.push_back(step);
    }

    out.score = current;
    out.stats.wall_seconds = seconds_since(start);
    return out;
}

RuntimeReport runtime_report(const SearchStats& stats) { return RuntimeReport{stats.configs_evaluated, stats.wall_seconds}; }

}  // namespace tsmatch
