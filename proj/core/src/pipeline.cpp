#include "laurel/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <unordered_set>

#include "json.hpp"
#include "laurel/errors.hpp"
#include "laurel/metrics.hpp"
#include "laurel/parallel.hpp"
#include "laurel/strata.hpp"
#include "laurel/topo_features.hpp"

namespace laurel {

using nlohmann::json;

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << text;
    if (!out)
        throw IoError("write failure on " + path.string());
}

json family_json(const FamilyMetrics& m) {
    return {{"roc_auc", m.roc_auc},
            {"pr_auc", m.pr_auc},
            {"f1_macro", m.f1_macro},
            {"f1_macro_best", m.best_f1},
            {"best_threshold", m.best_threshold}};
}

FamilyMetrics family_metrics(std::span<const double> scores, std::span<const int> labels) {
    FamilyMetrics m;
    m.roc_auc = roc_auc(scores, labels);
    m.pr_auc = pr_auc(scores, labels);
    m.f1_macro = f1_macro(confusion(scores, labels, 0.5));
    const auto best = best_threshold_f1(scores, labels);
    m.best_f1 = best.f1;
    m.best_threshold = best.threshold;
    return m;
}

std::vector<double> to_doubles(std::span<const float> v) { return {v.begin(), v.end()}; }

} // namespace

std::vector<std::string> topo_feature_names() {
    return {TopoFeatures::kNames.begin(), TopoFeatures::kNames.end()};
}

IngestSummary run_ingest(const fs::path& corpus, const fs::path& graph_out) {
    auto loaded = load_corpus(corpus);
    BuildReport report;
    const auto graph = build_graph(loaded.records, &report);
    graph.save(graph_out);
    IngestSummary s;
    s.records = loaded.records.size();
    s.malformed_lines = loaded.malformed_lines;
    s.dangling_references = report.dangling_references;
    s.winners = graph.winners().size();
    s.edges = graph.edge_count();
    s.warnings = std::move(loaded.warnings);
    return s;
}

void save_id_list(const fs::path& path, std::span<const PaperId> ids) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path.string());
    for (auto id : ids)
        out << id << '\n';
}

std::vector<PaperId> load_id_list(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open id list " + path.string());
    std::vector<PaperId> ids;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (line.empty())
            continue;
        PaperId id = 0;
        auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), id);
        if (ec != std::errc{} || ptr != line.data() + line.size())
            throw FormatError("bad id '" + line + "' in " + path.string());
        ids.push_back(id);
    }
    return ids;
}

std::vector<PaperId> run_sample(const fs::path& graph_path, std::size_t n, std::uint64_t seed,
                                const fs::path& ids_out) {
    const auto graph = CitationGraph::load(graph_path);
    const auto strata = distances_to_winners(graph);
    const auto winners = graph.winners();
    const auto nodes = stratified_sample(strata, winners, n, seed);
    std::vector<PaperId> ids;
    ids.reserve(nodes.size());
    for (auto v : nodes)
        ids.push_back(graph.paper_id(v));
    std::sort(ids.begin(), ids.end());
    save_id_list(ids_out, ids);
    return ids;
}

std::vector<NodeIndex> resolve_nodes(const CitationGraph& graph, std::span<const PaperId> ids) {
    std::vector<NodeIndex> nodes;
    if (ids.empty()) {
        nodes.resize(graph.node_count());
        for (NodeIndex v = 0; v < graph.node_count(); ++v)
            nodes[v] = v;
        return nodes;
    }
    for (auto id : ids) {
        auto v = graph.find(id);
        if (!v)
            throw Error("paper id " + std::to_string(id) + " is not in the graph");
        nodes.push_back(*v);
    }
    return nodes;
}

std::vector<FeatureRow> compute_feature_rows(const CitationGraph& graph,
                                             std::span<const NodeIndex> nodes, int delta,
                                             EdgeRule rule, std::size_t jobs) {
    std::vector<FeatureRow> rows(nodes.size());
    jobs = std::max<std::size_t>(1, std::min(jobs, nodes.size()));
    std::vector<SubgraphExtractor> extractors;
    extractors.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w)
        extractors.emplace_back(graph);
    parallel_for(nodes.size(), jobs, [&](std::size_t i, std::size_t worker) {
        const auto v = nodes[i];
        const auto sub = extractors[worker].extract(v, delta, rule);
        rows[i] = {graph.paper_id(v), compute_topo_features(sub), graph.is_winner(v) ? 1 : 0,
                   graph.year(v)};
    });
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.paper_id < b.paper_id; });
    return rows;
}

std::vector<FeatureRow> run_features(const fs::path& graph_path,
                                     const std::optional<fs::path>& ids_path,
                                     const FeaturesOptions& options, const fs::path& csv_out) {
    if (options.delta < 0)
        throw Error("delta must be non-negative");
    const auto graph = CitationGraph::load(graph_path);
    const auto ids = ids_path ? load_id_list(*ids_path) : std::vector<PaperId>{};
    const auto nodes = resolve_nodes(graph, ids);
    auto rows = compute_feature_rows(graph, nodes, options.delta, options.rule, options.jobs);
    save_feature_csv(csv_out, rows);
    return rows;
}

std::vector<ScoreRow> compute_score_rows(const CitationGraph& graph,
                                         const EmbeddingStore& embeddings,
                                         std::span<const NodeIndex> nodes,
                                         const ScoresOptions& options) {
    const int delta = options.refs_only ? std::min(options.delta, 1) : options.delta;
    std::vector<std::optional<ScoreRow>> slots(nodes.size());
    const auto jobs = std::max<std::size_t>(1, std::min(options.jobs, nodes.size()));
    std::vector<SubgraphExtractor> extractors;
    extractors.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w)
        extractors.emplace_back(graph);
    parallel_for(nodes.size(), jobs, [&](std::size_t i, std::size_t worker) {
        const auto v = nodes[i];
        const auto sub = extractors[worker].extract(v, delta);
        std::vector<Vector> vectors;
        for (std::size_t k = 1; k < sub.nodes.size(); ++k) {
            if (auto vec = embeddings.find(graph.paper_id(sub.nodes[k].vertex)))
                vectors.push_back(to_doubles(*vec));
        }
        if (vectors.size() < 2)
            return;
        slots[i] = ScoreRow{graph.paper_id(v), graph.is_winner(v) ? 1 : 0, phi_score(vectors),
                            theta_score(vectors, options.dbscan)};
    });
    std::vector<ScoreRow> rows;
    for (auto& s : slots)
        if (s)
            rows.push_back(*s);
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.paper_id < b.paper_id; });
    return rows;
}

std::vector<ScoreRow> run_scores(const fs::path& graph_path, const fs::path& embeddings_path,
                                 const std::optional<fs::path>& ids_path,
                                 const ScoresOptions& options, const fs::path& csv_out) {
    if (options.dbscan.eps <= 0.0 || options.dbscan.min_pts < 1)
        throw Error("DBSCAN needs eps > 0 and min_pts >= 1");
    const auto graph = CitationGraph::load(graph_path);
    const auto embeddings = EmbeddingStore::load(embeddings_path);
    const auto ids = ids_path ? load_id_list(*ids_path) : std::vector<PaperId>{};
    const auto nodes = resolve_nodes(graph, ids);
    auto rows = compute_score_rows(graph, embeddings, nodes, options);
    save_score_csv(csv_out, rows);
    return rows;
}

LabeledDataset assemble_dataset(std::span<const FeatureRow> rows, const EmbeddingStore& embeddings,
                                SplitFractions fractions, std::uint64_t seed,
                                std::size_t* dropped) {
    LabeledDataset d;
    d.topo = Matrix(0, TopoFeatures::kCount);
    d.text = Matrix(0, embeddings.dim());
    std::size_t missing = 0;
    for (const auto& r : rows) {
        auto vec = embeddings.find(r.paper_id);
        if (!vec) {
            ++missing;
            continue;
        }
        d.ids.push_back(r.paper_id);
        d.years.push_back(r.year);
        d.labels.push_back(r.label);
        const auto f = r.features.as_array();
        d.topo.push_row(f);
        d.text.push_row(to_doubles(*vec));
    }
    if (dropped)
        *dropped = missing;
    d.split = stratified_split(d.labels, fractions, seed);
    return d;
}

ScoredRows score_rows(const MixedModel& model, const LabeledDataset& data,
                      std::span<const std::size_t> rows) {
    ScoredRows s;
    for (auto r : rows) {
        const auto p = predict(model, data.topo.row(r), data.text.row(r));
        s.topo.push_back(p.topo);
        s.text.push_back(*p.text);
        s.mixed.push_back(p.mixed);
        s.labels.push_back(data.labels[r]);
        s.years.push_back(data.years[r]);
    }
    return s;
}

EvaluationMetrics compute_metrics(const ScoredRows& s) {
    EvaluationMetrics m;
    m.count = s.labels.size();
    m.positives = static_cast<std::size_t>(std::count(s.labels.begin(), s.labels.end(), 1));
    m.topological = family_metrics(s.topo, s.labels);
    m.textual = family_metrics(s.text, s.labels);
    m.mixed = family_metrics(s.mixed, s.labels);
    return m;
}

std::string metrics_to_json(const EvaluationMetrics& m, std::string_view split_name) {
    json j = {{"split", split_name},
              {"count", m.count},
              {"positives", m.positives},
              {"threshold", 0.5},
              {"topological", family_json(m.topological)},
              {"textual", family_json(m.textual)},
              {"mixed", family_json(m.mixed)}};
    return j.dump(2) + "\n";
}

TrainOutcome run_train(const fs::path& features_path, const fs::path& embeddings_path,
                       const TrainOptions& options, const fs::path& model_out,
                       const fs::path& metrics_out) {
    const auto rows = load_feature_csv(features_path);
    const auto embeddings = EmbeddingStore::load(embeddings_path);
    TrainOutcome out;
    const auto data = assemble_dataset(rows, embeddings, options.fractions,
                                       options.mixed.train.seed, &out.dropped_rows);
    if (data.size() == 0)
        throw TrainingError("no feature row has an embedding");

    out.model.model = train_mixed(data, options.mixed, &out.report);
    out.model.config = options.mixed;
    out.model.fractions = options.fractions;
    out.model.feature_names = topo_feature_names();
    const auto test_rows = data.rows_in(Split::Test);
    for (auto r : test_rows)
        out.model.held_out_ids.push_back(data.ids[r]);
    save_model(model_out, out.model);

    out.test_metrics = compute_metrics(score_rows(out.model.model, data, test_rows));
    write_text(metrics_out, metrics_to_json(out.test_metrics, "test"));
    return out;
}

EvaluationMetrics run_evaluate(const fs::path& model_path, const fs::path& features_path,
                               const fs::path& embeddings_path, const fs::path& out_dir,
                               bool all_rows, std::size_t min_year_count) {
    const auto model = load_model(model_path);
    const auto rows = load_feature_csv(features_path);
    const auto embeddings = EmbeddingStore::load(embeddings_path);
    const auto data = assemble_dataset(rows, embeddings, model.fractions, model.config.train.seed);

    std::vector<std::size_t> selected;
    if (all_rows) {
        selected.resize(data.size());
        for (std::size_t i = 0; i < data.size(); ++i)
            selected[i] = i;
    } else {
        std::unordered_set<PaperId> held(model.held_out_ids.begin(), model.held_out_ids.end());
        for (std::size_t i = 0; i < data.size(); ++i)
            if (held.contains(data.ids[i]))
                selected.push_back(i);
    }
    if (selected.empty())
        throw Error("no rows to evaluate");

    const auto scored = score_rows(model.model, data, selected);
    const auto metrics = compute_metrics(scored);

    fs::create_directories(out_dir);
    save_curve_csv(out_dir / "pr_curve.csv", "recall,precision", pr_curve(scored.mixed, scored.labels));
    save_curve_csv(out_dir / "roc_curve.csv", "fpr,tpr", roc_curve(scored.mixed, scored.labels));
    std::vector<ScoredSample> samples;
    for (std::size_t i = 0; i < scored.mixed.size(); ++i)
        samples.push_back({scored.mixed[i], scored.labels[i], scored.years[i], {}});
    save_f1_by_year_csv(out_dir / "f1_by_year.csv", f1_by_year(samples, 0.5, min_year_count));
    write_text(out_dir / "metrics.json", metrics_to_json(metrics, all_rows ? "all" : "test"));
    return metrics;
}

PredictOutcome run_predict(const CitationGraph& graph, const ModelFile& model,
                           std::span<const PaperId> references,
                           const std::optional<std::vector<double>>& embedding, int delta,
                           EdgeRule rule) {
    PredictOutcome out;
    std::vector<NodeIndex> refs;
    for (auto id : references) {
        if (auto v = graph.find(id)) {
            refs.push_back(*v);
        } else {
            ++out.dangling_references;
        }
    }
    std::sort(refs.begin(), refs.end());
    refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
    out.resolved_references = refs.size();

    SubgraphExtractor extractor(graph);
    const auto sub = extractor.extract_virtual(refs, delta, rule);
    out.features = compute_topo_features(sub);
    const auto f = out.features.as_array();
    if (embedding) {
        out.prediction = predict(model.model, f, std::span<const double>(*embedding));
    } else {
        out.prediction = predict(model.model, f, std::nullopt);
    }
    return out;
}

std::string prediction_to_json(const PredictOutcome& o) {
    const auto& p = o.prediction;
    json features;
    const auto values = o.features.as_array();
    for (std::size_t k = 0; k < TopoFeatures::kCount; ++k)
        features[std::string(TopoFeatures::kNames[k])] = values[k];
    json j = {{"y_topo", p.topo},
              {"y_text", p.text ? json(*p.text) : json(nullptr)},
              {"y_mixed", p.mixed},
              {"class", p.label},
              {"text_missing", p.text_missing},
              {"resolved_references", o.resolved_references},
              {"dangling_references", o.dangling_references},
              {"features", features}};
    return j.dump(2) + "\n";
}

PerceptronReport run_explain(const fs::path& features_path,
                             const std::optional<fs::path>& scores_path,
                             const ExplainOptions& options, const fs::path& out_dir) {
    const auto rows = load_feature_csv(features_path);
    if (rows.empty())
        throw Error("feature table is empty");
    Matrix x(0, TopoFeatures::kCount);
    std::vector<int> labels;
    for (const auto& r : rows) {
        x.push_row(r.features.as_array());
        labels.push_back(r.label);
    }
    const auto names = topo_feature_names();
    const auto split = stratified_split(labels, options.fractions, options.train.seed);
    auto report = train_simple_perceptron(x, labels, split, names, options.train);

    fs::create_directories(out_dir);
    auto dist = feature_distributions(x, labels, names);
    if (scores_path) {
        const auto scores = load_score_csv(*scores_path);
        if (!scores.empty()) {
            Matrix s(0, 2);
            std::vector<int> score_labels;
            for (const auto& r : scores) {
                s.push_row(std::vector<double>{r.phi, r.theta});
                score_labels.push_back(r.label);
            }
            const std::vector<std::string> score_names{"phi", "theta"};
            auto extra = feature_distributions(s, score_labels, score_names);
            dist.insert(dist.end(), extra.begin(), extra.end());
        }
    }
    save_feature_dist_csv(out_dir / "feature_dist.csv", dist);

    auto report_json = [](const WeightReport& w) {
        json entries = json::array();
        for (const auto& e : w.entries)
            entries.push_back({{"feature", e.feature}, {"weight", e.weight}});
        return json{{"weights", entries}, {"bias", w.bias}, {"validation_f1", w.validation_f1}};
    };
    json j = {{"raw", report_json(report.raw)}, {"standardized", report_json(report.standardized)}};
    write_text(out_dir / "weights.json", j.dump(2) + "\n");
    write_text(out_dir / "weights.txt",
               format_weight_report(report.raw, "Perceptron weights, raw features") + "\n" +
                   format_weight_report(report.standardized,
                                        "Perceptron weights, standardized features"));
    return report;
}

void run_synth(const SynthConfig& config, const fs::path& corpus_out,
               const fs::path& embeddings_out) {
    const auto corpus = generate_synthetic(config);
    save_corpus(corpus_out, corpus.records);
    corpus.embeddings.save(embeddings_out);
}

} // namespace laurel
