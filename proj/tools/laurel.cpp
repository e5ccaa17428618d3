// laurel: award prediction over citation subgraphs.
//
// Subcommands are file-staged:
//   synth    -> corpus.jsonl + embeddings.emb
//   ingest   corpus.jsonl -> graph.cgr
//   sample   graph.cgr -> ids.txt
//   features graph.cgr [ids.txt] -> features.csv
//   scores   graph.cgr + embeddings -> phi_theta.csv
//   train    features.csv + embeddings -> model.json + metrics.json
//   evaluate model.json + features.csv + embeddings -> metric CSVs
//   predict  graph.cgr + model.json + refs -> JSON on stdout
//   explain  features.csv [phi_theta.csv] -> weights + feature_dist.csv

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "laurel/corpus.hpp"
#include "laurel/errors.hpp"
#include "laurel/parallel.hpp"
#include "laurel/pipeline.hpp"

namespace {

using namespace laurel;

std::vector<PaperId> parse_refs(const std::string& text) {
    std::vector<PaperId> ids;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos)
            continue;
        const auto e = item.find_last_not_of(" \t");
        ids.push_back(intern_id(item.substr(b, e - b + 1)));
    }
    return ids;
}

std::optional<fs::path> optional_path(const std::string& s) {
    if (s.empty())
        return std::nullopt;
    return fs::path(s);
}

void add_training_flags(CLI::App* cmd, TrainConfig& cfg) {
    cmd->add_option("--lr", cfg.learning_rate, "Learning rate")->capture_default_str();
    cmd->add_option("--epochs", cfg.epochs, "Maximum epochs")->capture_default_str();
    cmd->add_option("--batch-size", cfg.batch_size, "Mini-batch size")->capture_default_str();
    cmd->add_option("--patience", cfg.patience, "Early-stop patience in epochs")
        ->capture_default_str();
    cmd->add_flag("--class-weight", cfg.class_weighting, "Inverse class-frequency loss weights");
    cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    cmd->add_option("--optimizer", cfg.optimizer, "adam or sgd")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Optimizer>{{"adam", Optimizer::Adam}, {"sgd", Optimizer::Sgd}}));
}

void add_split_flags(CLI::App* cmd, SplitFractions& f) {
    cmd->add_option("--train-frac", f.train, "Training fraction")->capture_default_str();
    cmd->add_option("--val-frac", f.validation, "Validation fraction")->capture_default_str();
    cmd->add_option("--test-frac", f.test, "Test fraction")->capture_default_str();
}

void check_fractions(const SplitFractions& f) {
    if (std::abs(f.train + f.validation + f.test - 1.0) > 1e-9)
        throw CLI::ValidationError("split fractions must sum to 1");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"laurel: predict best-paper awards from citation subgraphs"};
    app.require_subcommand(1);

    // synth
    SynthConfig synth;
    std::string synth_corpus, synth_emb;
    auto* cmd_synth = app.add_subcommand("synth", "Generate a seeded synthetic corpus");
    cmd_synth->add_option("--papers", synth.papers)->capture_default_str();
    cmd_synth->add_option("--winners", synth.winners)->capture_default_str();
    cmd_synth->add_option("--dim", synth.dim, "Embedding dimension")->capture_default_str();
    cmd_synth->add_option("--seed", synth.seed)->capture_default_str();
    cmd_synth->add_option("--winner-cohesion", synth.winner_cohesion)->capture_default_str();
    cmd_synth->add_option("--nonwinner-cohesion", synth.nonwinner_cohesion)->capture_default_str();
    cmd_synth->add_option("--corpus", synth_corpus, "Output corpus (JSON lines)")->required();
    cmd_synth->add_option("--embeddings", synth_emb, "Output embeddings (EMB1)")->required();

    // ingest
    std::string corpus_path, graph_path;
    auto* cmd_ingest = app.add_subcommand("ingest", "Build a graph snapshot from a corpus");
    cmd_ingest->add_option("--corpus", corpus_path)->required()->check(CLI::ExistingFile);
    cmd_ingest->add_option("--graph", graph_path, "Output snapshot")->required();

    // sample
    std::size_t sample_n = 10000;
    std::uint64_t sample_seed = 42;
    std::string ids_out;
    auto* cmd_sample = app.add_subcommand("sample", "Stratified sample of papers");
    cmd_sample->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);
    cmd_sample->add_option("--n", sample_n, "Sample size")->capture_default_str();
    cmd_sample->add_option("--seed", sample_seed)->capture_default_str();
    cmd_sample->add_option("--out", ids_out, "Output id list")->required();

    // features
    FeaturesOptions feat;
    bool induced = false;
    std::optional<std::size_t> jobs;
    std::string ids_in, features_path;
    auto* cmd_features = app.add_subcommand("features", "Topological feature CSV");
    cmd_features->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);
    cmd_features->add_option("--ids", ids_in, "Id list (default: every paper)")
        ->check(CLI::ExistingFile);
    cmd_features->add_option("--delta", feat.delta, "Subgraph radius")->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cmd_features->add_flag("--induced", induced, "Use the induced subgraph edge set");
    cmd_features->add_option("--jobs", jobs, "Worker threads");
    cmd_features->add_option("--out", features_path)->required();

    // scores
    ScoresOptions sc;
    std::string emb_path, scores_out;
    auto* cmd_scores = app.add_subcommand("scores", "phi/theta text-similarity scores");
    cmd_scores->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);
    cmd_scores->add_option("--embeddings", emb_path)->required()->check(CLI::ExistingFile);
    cmd_scores->add_option("--ids", ids_in)->check(CLI::ExistingFile);
    cmd_scores->add_option("--delta", sc.delta)->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cmd_scores->add_option("--eps", sc.dbscan.eps, "DBSCAN radius (cosine distance)")
        ->capture_default_str();
    cmd_scores->add_option("--min-pts", sc.dbscan.min_pts, "DBSCAN core threshold")
        ->capture_default_str();
    cmd_scores->add_flag("--refs-only", sc.refs_only, "Use direct references only");
    cmd_scores->add_option("--jobs", jobs, "Worker threads");
    cmd_scores->add_option("--out", scores_out)->required();

    // train
    TrainOptions tr;
    std::string model_path, metrics_out;
    auto* cmd_train = app.add_subcommand("train", "Train the mixed model");
    cmd_train->add_option("--features", features_path)->required()->check(CLI::ExistingFile);
    cmd_train->add_option("--embeddings", emb_path)->required()->check(CLI::ExistingFile);
    cmd_train->add_option("--hidden1", tr.mixed.hidden1, "Topological MLP width")
        ->capture_default_str();
    cmd_train->add_option("--hidden2", tr.mixed.hidden2, "Text MLP width")->capture_default_str();
    add_training_flags(cmd_train, tr.mixed.train);
    add_split_flags(cmd_train, tr.fractions);
    cmd_train->add_option("--model", model_path, "Output model JSON")->required();
    cmd_train->add_option("--metrics", metrics_out, "Output metrics JSON")
        ->default_val("metrics.json");

    // evaluate
    std::string out_dir;
    bool all_rows = false;
    std::size_t min_year_count = 10;
    auto* cmd_eval = app.add_subcommand("evaluate", "Metric files for held-out papers");
    cmd_eval->add_option("--model", model_path)->required()->check(CLI::ExistingFile);
    cmd_eval->add_option("--features", features_path)->required()->check(CLI::ExistingFile);
    cmd_eval->add_option("--embeddings", emb_path)->required()->check(CLI::ExistingFile);
    cmd_eval->add_flag("--all", all_rows, "Evaluate every row, not just the held-out split");
    cmd_eval->add_option("--min-year-count", min_year_count)->capture_default_str();
    cmd_eval->add_option("--out-dir", out_dir)->required();

    // predict
    std::string refs_text, embedding_file;
    int predict_delta = 2;
    auto* cmd_predict = app.add_subcommand("predict", "Score one paper given its references");
    cmd_predict->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);
    cmd_predict->add_option("--model", model_path)->required()->check(CLI::ExistingFile);
    cmd_predict->add_option("--refs", refs_text, "Comma-separated cited paper ids")->required();
    cmd_predict->add_option("--embedding", embedding_file,
                            "Embedding file holding the paper's vector (first record)")
        ->check(CLI::ExistingFile);
    cmd_predict->add_option("--delta", predict_delta)->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cmd_predict->add_flag("--induced", induced);

    // explain
    ExplainOptions ex;
    std::string scores_in;
    auto* cmd_explain = app.add_subcommand("explain", "Perceptron weights and distributions");
    cmd_explain->add_option("--features", features_path)->required()->check(CLI::ExistingFile);
    cmd_explain->add_option("--scores", scores_in, "phi_theta.csv to summarize as well")
        ->check(CLI::ExistingFile);
    add_training_flags(cmd_explain, ex.train);
    add_split_flags(cmd_explain, ex.fractions);
    cmd_explain->add_option("--out-dir", out_dir)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_synth->parsed()) {
            run_synth(synth, synth_corpus, synth_emb);
            std::cerr << "wrote " << synth.papers << " papers (" << synth.winners << " winners)\n";
        } else if (cmd_ingest->parsed()) {
            const auto s = run_ingest(corpus_path, graph_path);
            for (const auto& w : s.warnings)
                std::cerr << "warning: " << w << '\n';
            std::cerr << "ingested " << s.records << " papers, " << s.edges << " edges, "
                      << s.winners << " winners; skipped " << s.malformed_lines
                      << " malformed lines, dropped " << s.dangling_references
                      << " dangling references\n";
        } else if (cmd_sample->parsed()) {
            const auto ids = run_sample(graph_path, sample_n, sample_seed, ids_out);
            std::cerr << "sampled " << ids.size() << " papers\n";
        } else if (cmd_features->parsed()) {
            feat.rule = induced ? EdgeRule::Induced : EdgeRule::Walk;
            feat.jobs = resolve_jobs(jobs);
            const auto rows = run_features(graph_path, optional_path(ids_in), feat, features_path);
            std::cerr << "wrote features for " << rows.size() << " papers\n";
        } else if (cmd_scores->parsed()) {
            if (sc.dbscan.eps <= 0.0 || sc.dbscan.min_pts < 1)
                throw CLI::ValidationError("--eps must be > 0 and --min-pts >= 1");
            sc.jobs = resolve_jobs(jobs);
            const auto rows =
                run_scores(graph_path, emb_path, optional_path(ids_in), sc, scores_out);
            std::cerr << "wrote scores for " << rows.size() << " papers\n";
        } else if (cmd_train->parsed()) {
            check_fractions(tr.fractions);
            const auto out = run_train(features_path, emb_path, tr, model_path, metrics_out);
            if (out.dropped_rows)
                std::cerr << "warning: " << out.dropped_rows
                          << " feature rows had no embedding and were skipped\n";
            std::cerr << "test macro-F1: topological " << out.test_metrics.topological.f1_macro
                      << ", textual " << out.test_metrics.textual.f1_macro << ", mixed "
                      << out.test_metrics.mixed.f1_macro << '\n';
        } else if (cmd_eval->parsed()) {
            const auto m = run_evaluate(model_path, features_path, emb_path, out_dir, all_rows,
                                        min_year_count);
            std::cerr << "evaluated " << m.count << " papers; mixed ROC AUC " << m.mixed.roc_auc
                      << ", PR AUC " << m.mixed.pr_auc << ", macro-F1 " << m.mixed.f1_macro
                      << '\n';
        } else if (cmd_predict->parsed()) {
            const auto graph = CitationGraph::load(graph_path);
            const auto model = load_model(model_path);
            std::optional<std::vector<double>> embedding;
            if (!embedding_file.empty()) {
                const auto store = EmbeddingStore::load(embedding_file);
                if (store.empty())
                    throw FormatError("embedding file holds no vector");
                auto v = store.vector(0);
                embedding.emplace(v.begin(), v.end());
            }
            const auto out = run_predict(graph, model, parse_refs(refs_text), embedding,
                                         predict_delta,
                                         induced ? EdgeRule::Induced : EdgeRule::Walk);
            std::cout << prediction_to_json(out);
        } else if (cmd_explain->parsed()) {
            check_fractions(ex.fractions);
            const auto report = run_explain(features_path, optional_path(scores_in), ex, out_dir);
            std::cout << format_weight_report(report.raw, "Perceptron weights, raw features")
                      << '\n'
                      << format_weight_report(report.standardized,
                                              "Perceptron weights, standardized features");
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const laurel::Error& e) {
        std::cerr << "laurel: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "laurel: unexpected error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
