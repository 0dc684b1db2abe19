// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

#include "tsmatch/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tsmatch/csv.hpp"
#include "tsmatch/evaluation.hpp"
#include "tsmatch/fd_baseline.hpp"
#include "tsmatch/matcher.hpp"
#include "tsmatch/optimizer.hpp"
#include "tsmatch/parallel.hpp"
#include "tsmatch/synth.hpp"

namespace tsmatch::cli {

namespace fs = std::filesystem;

std::string default_out_dir() {
    const char* env = std::getenv("TSMATCH_OUT_DIR");
    return env && *env ? std::string(env) : std::string("tsmatch_out");
}

namespace {

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw CliError("cannot write '" + path.string() + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<SourceTable> load_corpus(const std::string& manifest) { return load_documents(load_manifest(manifest)); }

TargetSchema load_schema_checked(const std::string& path, std::ostream& err) {
    std::vector<std::string> warnings;
    auto schema = load_schema_file(path, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << "\n";
    return schema;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) { return format_number(v); }

std::string weights_text(const WeightVector& w) {
    std::string s;
    for (auto m : kAllMetrics) {
        if (!s.empty()) s += ' ';
        s += std::string(to_string(m)) + "=" + fmt(w[index_of(m)]);
    }
    return s;
}

/// Standardized output of every document under `config`, stacked.
Table hybrid_output(const std::vector<SourceTable>& docs, const TargetSchema& schema,
                    const std::vector<MappingResult>& mappings) {
    std::vector<Table> tables;
    for (std::size_t d = 0; d < docs.size(); ++d) tables.push_back(project_table(docs[d], schema, mappings[d]).table);
    if (tables.empty()) {
        Table t;
        for (const auto& a : schema.attributes) t.headers.push_back(a.name);
        return t;
    }
    return stack_tables(tables);
}

// --- subcommands -------------------------------------------------------------

struct GenerateArgs {
    std::string out;
    std::uint64_t seed = 42;
    std::size_t docs = 4;
    std::size_t rows = 30;
};

void do_generate(const GenerateArgs& a, std::ostream& out) {
    const auto ds = generate_dataset(reference_layouts(), a.docs, a.rows, a.seed);
    write_dataset(ds, reference_schema(), a.out);
    out << "wrote " << ds.documents.size() << " documents, " << ds.ground_truth.entries.size()
        << " truth pairs and " << ds.cluster_truth.sets.size() << " column sets to " << a.out << "\n";
}

struct MatchArgs {
    std::string schema, manifest, weights, out;
    double alpha = 0.5, theta = 0.5;
    bool alpha_set = false, theta_set = false;
    unsigned workers = 1;
};

void do_match(const MatchArgs& a, std::ostream& out, std::ostream& err) {
    const auto schema = load_schema_checked(a.schema, err);
    const auto docs = load_corpus(a.manifest);
    WeightConfig config;
    if (!a.weights.empty()) config = load_weight_config_file(a.weights);
    if (a.alpha_set || a.weights.empty()) config.alpha = a.alpha;
    if (a.theta_set || a.weights.empty()) config.theta = a.theta;

    std::vector<MappingResult> mappings(docs.size());
    std::vector<StandardizedTable> tables(docs.size());
    parallel_chunks(docs.size(), a.workers, [&](std::size_t b, std::size_t e, unsigned) {
        for (std::size_t d = b; d < e; ++d) {
            mappings[d] = assign(build_matrix(docs[d], schema, config));
            tables[d] = project_table(docs[d], schema, mappings[d]);
        }
    });

    std::vector<Table> all;
    std::size_t warnings = 0;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        const auto& id = docs[d].document_id;
        write_file(fs::path(a.out) / "mappings" / (id + ".json"), mapping_to_json(docs[d], mappings[d]));
        write_file(fs::path(a.out) / "standardized" / (id + ".csv"), to_csv(tables[d].table));
        for (const auto& w : tables[d].warnings)
            err << "warning: " << id << " row " << w.row + 1 << " " << w.attribute << ": cannot parse '" << w.raw
                << "'\n";
        warnings += tables[d].warnings.size();
        all.push_back(tables[d].table);
        out << id << ": " << mappings[d].pairs.size() << " mapped, " << mappings[d].omitted_columns.size()
            << " omitted, total score " << fmt(mappings[d].total_score()) << "\n";
    }
    if (!all.empty()) write_file(fs::path(a.out) / "standardized.csv", to_csv(stack_tables(all)));
    out << docs.size() << " documents matched, " << warnings << " cell warnings\n";
}

struct OptimizeArgs {
    std::string schema, manifest, truth, out, mode = "weights";
    std::size_t grid = 4;
    double alpha = 0.5, theta = 0.5;
    unsigned workers = 1;
};

void do_optimize(const OptimizeArgs& a, std::ostream& out, std::ostream& err) {
    const auto schema = load_schema_checked(a.schema, err);
    const auto docs = load_corpus(a.manifest);
    const auto truth = load_ground_truth_file(a.truth);
    validate_ground_truth(truth, schema);

    const auto t0 = std::chrono::steady_clock::now();
    const auto tensor = precompute_tensor(docs, schema, a.workers);
    GridSpec grid;
    grid.grid_size = a.grid;
    grid.mode = a.mode == "params" ? SearchMode::ParamsOnly
                : a.mode == "both" ? SearchMode::ParamsAndWeights
                                   : SearchMode::WeightsOnly;

    std::ostringstream log;
    log << "phase,item,candidates,f1,detail\n";
    WeightConfig config;
    config.alpha = a.alpha;
    config.theta = a.theta;
    const Prf start = evaluate_config(tensor, truth, config);
    log << "default,,1," << fmt(start.f1) << ",alpha=" << fmt(config.alpha) << " theta=" << fmt(config.theta) << "\n";
    std::size_t evaluated = 0;
    Prf final_score = start;

    if (grid.mode != SearchMode::WeightsOnly) {
        const auto p = grid_search_params(tensor, truth, grid, WeightConfig{}, a.workers);
        config.alpha = p.alpha;
        config.theta = p.theta;
        evaluated += p.stats.configs_evaluated;
        final_score = p.score;
        log << "params,," << p.stats.configs_evaluated << "," << fmt(p.score.f1) << ",alpha=" << fmt(p.alpha)
            << " theta=" << fmt(p.theta) << "\n";
    }
    if (grid.mode != SearchMode::ParamsOnly) {
        const auto w = grid_search_weights(tensor, truth, grid, config.alpha, config.theta, a.workers);
        for (const auto& s : w.steps)
            log << "weights," << s.attribute << "," << s.candidates << "," << fmt(s.f1) << "," << weights_text(s.chosen)
                << "\n";
        config = w.config;
        evaluated += w.stats.configs_evaluated;
        final_score = w.score;
    }
    log << "final,," << evaluated << "," << fmt(final_score.f1) << ",precision=" << fmt(final_score.precision)
        << " recall=" << fmt(final_score.recall) << "\n";

    write_file(fs::path(a.out) / "weights.yaml", dump_weight_config(config));
    write_file(fs::path(a.out) / "optimize_log.csv", log.str());
    out << "default F1 " << fmt(start.f1) << ", tuned F1 " << fmt(final_score.f1) << " (" << evaluated
        << " configurations, " << seconds_since(t0) << " s)\n";
}

struct FdArgs {
    std::string manifest, cluster_truth, out;
    double tau = 0.7;
};

void do_integrate_fd(const FdArgs& a, std::ostream& out) {
    const auto docs = load_corpus(a.manifest);
    const auto clustering = cluster_columns(docs, a.tau);
    const auto integrated = integrate_fd(docs, clustering);

    std::vector<csv::Row> rows{{"format_id", "document_id", "source_column", "cluster", "representative"}};
    for (std::size_t i = 0; i < clustering.columns.size(); ++i) {
        const auto& c = clustering.columns[i];
        const auto k = clustering.cluster_of[i];
        rows.push_back({c.format_id, c.document_id, c.header_raw, std::to_string(k), clustering.representatives[k]});
    }
    write_file(fs::path(a.out) / "fd_integrated.csv", to_csv(integrated));
    write_file(fs::path(a.out) / "fd_clusters.csv", csv::format(rows));

    const auto u = usability(data_columns(integrated));
    nlohmann::json j;
    j["tau"] = a.tau;
    j["clusters"] = clustering.clusters.size();
    j["column_count"] = u.column_count;
    j["null_fraction"] = u.null_fraction;
    j["rows"] = u.row_count;
    if (!a.cluster_truth.empty()) {
        const auto p = evaluate_clusters(clustering, load_cluster_truth_file(a.cluster_truth));
        j["evaluation"] = {{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1}};
    } else {
        j["evaluation"] = "skipped";
    }
    write_file(fs::path(a.out) / "fd_summary.json", j.dump(2) + "\n");
    out << clustering.clusters.size() << " clusters, " << u.column_count << " data columns, null "
        << fmt(100.0 * u.null_fraction) << " %\n";
}

struct EvaluateArgs {
    std::string schema, manifest, truth, cluster_truth, out;
    std::size_t grid = 4;
    double alpha = 0.5, theta = 0.5, tau = 0.7;
    bool skip_baseline = false;
    unsigned workers = 1;
};

void do_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
    const auto schema = load_schema_checked(a.schema, err);
    const auto docs = load_corpus(a.manifest);
    const auto truth = load_ground_truth_file(a.truth);
    validate_ground_truth(truth, schema);
    const auto t0 = std::chrono::steady_clock::now();
    const auto tensor = precompute_tensor(docs, schema, a.workers);
    GridSpec grid;
    grid.grid_size = a.grid;

    ComparisonReport report;
    auto add = [&](const std::string& name, const WeightConfig& config) {
        MethodResult m;
        m.name = name;
        m.score = evaluate_config(tensor, truth, config);
        m.usability = usability(hybrid_output(docs, schema, match_from_tensor(tensor, config)));
        report.hybrid.push_back(m);
    };

    WeightConfig base;
    base.alpha = a.alpha;
    base.theta = a.theta;
    add("Hybrid (default)", base);

    grid.mode = SearchMode::ParamsOnly;
    const auto params = grid_search_params(tensor, truth, grid, WeightConfig{}, a.workers);
    WeightConfig tuned_params;
    tuned_params.alpha = params.alpha;
    tuned_params.theta = params.theta;
    add("Hybrid + global params", tuned_params);

    grid.mode = SearchMode::WeightsOnly;
    const auto weights = grid_search_weights(tensor, truth, grid, a.alpha, a.theta, a.workers);
    add("Hybrid + per-attribute weights", weights.config);

    grid.mode = SearchMode::ParamsAndWeights;
    const auto both = grid_search_weights(tensor, truth, grid, params.alpha, params.theta, a.workers);
    add("Hybrid + params + weights", both.config);

    if (!a.skip_baseline) {
        const auto clustering = cluster_columns(docs, a.tau);
        MethodResult fd;
        fd.name = "FD baseline (tau " + fmt(a.tau) + ")";
        fd.usability = usability(data_columns(integrate_fd(docs, clustering)));
        if (!a.cluster_truth.empty()) fd.score = evaluate_clusters(clustering, load_cluster_truth_file(a.cluster_truth));
        else err << "warning: no --cluster-truth given, FD accuracy reported as 0\n";
        report.baseline = fd;
    }

    report.weight_gaps = weight_gap_analysis(weights.config, schema);
    const auto [schema_w, instance_w] = group_weight_pairs(weights.config, schema);
    try {
        if (!schema_w.empty()) report.weight_analysis = wilcoxon_signed_rank(instance_w, schema_w);
    } catch (const EvaluationError& e) {
        err << "note: weight analysis skipped (" << e.what() << ")\n";
    }

    emit_report(report, a.out);
    write_file(fs::path(a.out) / "weights.yaml", dump_weight_config(weights.config));
    out << report_to_text(report);
    out << "evaluation took " << seconds_since(t0) << " s\n";
}

struct ReportArgs {
    std::string input, out;
};

void do_report(const ReportArgs& a, std::ostream& out) {
    const auto report = report_from_json(read_file(a.input));
    if (!a.out.empty()) emit_report(report, a.out);
    out << report_to_text(report);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"tsmatch: template-based schema matching for tenancy schedules", "tsmatch"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.set_version_flag("--version", "tsmatch 1.0.0");

    const std::string out_default = default_out_dir();
    const unsigned workers_default = default_workers();
    auto add_workers = [&](CLI::App* sub, unsigned& target) {
        target = workers_default;
        sub->add_option("--workers", target, "Worker threads (1 = sequential)")->check(CLI::Range(1u, 1024u));
    };

    GenerateArgs gen;
    gen.out = out_default;
    auto* g = app.add_subcommand("generate", "Write the synthetic multi-layout fixture corpus");
    g->add_option("--out", gen.out, "Output directory");
    g->add_option("--seed", gen.seed, "Random seed");
    g->add_option("--docs-per-layout", gen.docs, "Documents per layout")->check(CLI::PositiveNumber);
    g->add_option("--rows", gen.rows, "Rows per document")->check(CLI::PositiveNumber);

    MatchArgs match;
    match.out = out_default;
    auto* m = app.add_subcommand("match", "Map every document onto the target schema");
    m->add_option("--schema", match.schema, "Target schema YAML")->required()->check(CLI::ExistingFile);
    m->add_option("--manifest", match.manifest, "Document manifest YAML")->required()->check(CLI::ExistingFile);
    m->add_option("--weights", match.weights, "Weight profile YAML (default: uniform weights)")
        ->check(CLI::ExistingFile);
    auto* m_alpha = m->add_option("--alpha", match.alpha, "Schema/instance blend, overrides the profile")
                        ->check(CLI::Range(0.0, 1.0));
    auto* m_theta =
        m->add_option("--theta", match.theta, "Score threshold, overrides the profile")->check(CLI::Range(0.0, 1.0));
    m->add_option("--out", match.out, "Output directory");
    add_workers(m, match.workers);

    OptimizeArgs opt;
    opt.out = out_default;
    auto* o = app.add_subcommand("optimize", "Grid-search parameters and metric weights");
    o->add_option("--schema", opt.schema, "Target schema YAML")->required()->check(CLI::ExistingFile);
    o->add_option("--manifest", opt.manifest, "Document manifest YAML")->required()->check(CLI::ExistingFile);
    o->add_option("--truth", opt.truth, "Ground-truth mapping CSV")->required()->check(CLI::ExistingFile);
    o->add_option("--mode", opt.mode, "params | weights | both")
        ->check(CLI::IsMember({"params", "weights", "both"}));
    o->add_option("--grid", opt.grid, "Grid size per dimension")->check(CLI::Range(2, 11));
    o->add_option("--alpha", opt.alpha, "Blend used by the weight search")->check(CLI::Range(0.0, 1.0));
    o->add_option("--theta", opt.theta, "Threshold used by the weight search")->check(CLI::Range(0.0, 1.0));
    o->add_option("--out", opt.out, "Output directory");
    add_workers(o, opt.workers);

    FdArgs fd;
    fd.out = out_default;
    auto* f = app.add_subcommand("integrate-fd", "Cluster columns and build the outer-union baseline");
    f->add_option("--manifest", fd.manifest, "Document manifest YAML")->required()->check(CLI::ExistingFile);
    f->add_option("--tau", fd.tau, "Column similarity threshold")->check(CLI::Range(0.0, 1.0));
    f->add_option("--cluster-truth", fd.cluster_truth, "Column-set truth CSV (optional)")->check(CLI::ExistingFile);
    f->add_option("--out", fd.out, "Output directory");

    EvaluateArgs ev;
    ev.out = out_default;
    auto* e = app.add_subcommand("evaluate", "Compare hybrid configurations with the FD baseline");
    e->add_option("--schema", ev.schema, "Target schema YAML")->required()->check(CLI::ExistingFile);
    e->add_option("--manifest", ev.manifest, "Document manifest YAML")->required()->check(CLI::ExistingFile);
    e->add_option("--truth", ev.truth, "Ground-truth mapping CSV")->required()->check(CLI::ExistingFile);
    e->add_option("--cluster-truth", ev.cluster_truth, "Column-set truth CSV for the baseline")
        ->check(CLI::ExistingFile);
    e->add_option("--grid", ev.grid, "Grid size per dimension")->check(CLI::Range(2, 11));
    e->add_option("--alpha", ev.alpha, "Default blend")->check(CLI::Range(0.0, 1.0));
    e->add_option("--theta", ev.theta, "Default threshold")->check(CLI::Range(0.0, 1.0));
    e->add_option("--tau", ev.tau, "FD column similarity threshold")->check(CLI::Range(0.0, 1.0));
    e->add_flag("--skip-baseline", ev.skip_baseline, "Do not run the FD baseline");
    e->add_option("--out", ev.out, "Output directory");
    add_workers(e, ev.workers);

    ReportArgs rep;
    auto* r = app.add_subcommand("report", "Render a report.json as the summary table");
    r->add_option("--input", rep.input, "report.json written by evaluate")->required()->check(CLI::ExistingFile);
    r->add_option("--out", rep.out, "Directory to re-emit report.json and report.txt (optional)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& ex) {
        return app.exit(ex, out, err);
    }

    try {
        if (g->parsed()) do_generate(gen, out);
        else if (m->parsed()) {
            match.alpha_set = m_alpha->count() > 0;
            match.theta_set = m_theta->count() > 0;
            do_match(match, out, err);
        } else if (o->parsed()) do_optimize(opt, out, err);
        else if (f->parsed()) do_integrate_fd(fd, out);
        else if (e->parsed()) do_evaluate(ev, out, err);
        else if (r->parsed()) do_report(rep, out);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace tsmatch::cli
