#pragma once

// File-staged pipeline stages. Each function is one CLI subcommand minus the
// argument parsing, so the stages can also be driven from tests.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "laurel/citation_graph.hpp"
#include "laurel/embeddings.hpp"
#include "laurel/feature_table.hpp"
#include "laurel/mixed_model.hpp"
#include "laurel/model_io.hpp"
#include "laurel/subgraph.hpp"
#include "laurel/synth.hpp"
#include "laurel/text_scores.hpp"

namespace laurel {

namespace fs = std::filesystem;

struct IngestSummary {
    std::size_t records = 0;
    std::size_t malformed_lines = 0;
    std::size_t dangling_references = 0;
    std::size_t winners = 0;
    std::uint64_t edges = 0;
    std::vector<std::string> warnings;
};

IngestSummary run_ingest(const fs::path& corpus, const fs::path& graph_out);

/// Paper id list: one decimal id per line.
void save_id_list(const fs::path& path, std::span<const PaperId> ids);
std::vector<PaperId> load_id_list(const fs::path& path);

/// Stratified sample of `n` papers, written as an id list (sorted by id).
std::vector<PaperId> run_sample(const fs::path& graph_path, std::size_t n, std::uint64_t seed,
                                const fs::path& ids_out);

/// Node indices for an id list; every node when `ids` is empty. Unknown ids throw.
std::vector<NodeIndex> resolve_nodes(const CitationGraph& graph, std::span<const PaperId> ids);

/// Topological features per node, sorted by paper id.
std::vector<FeatureRow> compute_feature_rows(const CitationGraph& graph,
                                             std::span<const NodeIndex> nodes, int delta,
                                             EdgeRule rule, std::size_t jobs);

struct FeaturesOptions {
    int delta = 2;
    EdgeRule rule = EdgeRule::Walk;
    std::size_t jobs = 1;
};

std::vector<FeatureRow> run_features(const fs::path& graph_path,
                                     const std::optional<fs::path>& ids_path,
                                     const FeaturesOptions& options, const fs::path& csv_out);

struct ScoresOptions {
    int delta = 2;
    DbscanParams dbscan;
    bool refs_only = false;  ///< distance-1 references instead of the whole Δ-ball
    std::size_t jobs = 1;
};

/// φ/θ per node over the embedded papers of its subgraph, root excluded.
/// Papers with fewer than two embedded cited papers are omitted.
std::vector<ScoreRow> compute_score_rows(const CitationGraph& graph,
                                         const EmbeddingStore& embeddings,
                                         std::span<const NodeIndex> nodes,
                                         const ScoresOptions& options);

std::vector<ScoreRow> run_scores(const fs::path& graph_path, const fs::path& embeddings_path,
                                 const std::optional<fs::path>& ids_path,
                                 const ScoresOptions& options, const fs::path& csv_out);

/// Joins feature rows with embeddings; rows without an embedding are dropped
/// and counted in `dropped`.
LabeledDataset assemble_dataset(std::span<const FeatureRow> rows, const EmbeddingStore& embeddings,
                                SplitFractions fractions, std::uint64_t seed,
                                std::size_t* dropped = nullptr);

struct FamilyMetrics {
    double roc_auc = 0.0;
    double pr_auc = 0.0;
    double f1_macro = 0.0;
    double best_f1 = 0.0;
    double best_threshold = 0.5;
};

struct EvaluationMetrics {
    FamilyMetrics topological;
    FamilyMetrics textual;
    FamilyMetrics mixed;
    std::size_t count = 0;
    std::size_t positives = 0;
};

struct ScoredRows {
    std::vector<double> topo;
    std::vector<double> text;
    std::vector<double> mixed;
    std::vector<int> labels;
    std::vector<std::int32_t> years;
};

ScoredRows score_rows(const MixedModel& model, const LabeledDataset& data,
                      std::span<const std::size_t> rows);
EvaluationMetrics compute_metrics(const ScoredRows& scored);
std::string metrics_to_json(const EvaluationMetrics& metrics, std::string_view split_name);

struct TrainOptions {
    MixedConfig mixed;
    SplitFractions fractions;
};

struct TrainOutcome {
    ModelFile model;
    EvaluationMetrics test_metrics;
    MixedTrainReport report;
    std::size_t dropped_rows = 0;
};

TrainOutcome run_train(const fs::path& features_path, const fs::path& embeddings_path,
                       const TrainOptions& options, const fs::path& model_out,
                       const fs::path& metrics_out);

/// Writes pr_curve.csv, roc_curve.csv, f1_by_year.csv and metrics.json into
/// `out_dir`. Evaluates the model's held-out papers, or every row with
/// `all_rows`.
EvaluationMetrics run_evaluate(const fs::path& model_path, const fs::path& features_path,
                               const fs::path& embeddings_path, const fs::path& out_dir,
                               bool all_rows, std::size_t min_year_count = 10);

struct PredictOutcome {
    Prediction prediction;
    TopoFeatures features;
    std::size_t resolved_references = 0;
    std::size_t dangling_references = 0;
};

PredictOutcome run_predict(const CitationGraph& graph, const ModelFile& model,
                           std::span<const PaperId> references,
                           const std::optional<std::vector<double>>& embedding, int delta,
                           EdgeRule rule = EdgeRule::Walk);
std::string prediction_to_json(const PredictOutcome& outcome);

struct ExplainOptions {
    TrainConfig train;
    SplitFractions fractions;
};

/// Simplified perceptron weight report (weights.json plus a text rendering)
/// and feature_dist.csv; φ/θ distributions are appended when `scores_path`
/// is given.
PerceptronReport run_explain(const fs::path& features_path,
                             const std::optional<fs::path>& scores_path,
                             const ExplainOptions& options, const fs::path& out_dir);

void run_synth(const SynthConfig& config, const fs::path& corpus_out,
               const fs::path& embeddings_out);

/// Standard topological feature names in column order.
std::vector<std::string> topo_feature_names();

} // namespace laurel
