#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "laurel/matrix.hpp"
#include "laurel/mlp.hpp"
#include "laurel/types.hpp"

namespace laurel {

enum class Split : std::uint8_t { Train, Validation, Test };

struct SplitFractions {
    double train = 0.70;
    double validation = 0.15;
    double test = 0.15;
};

/// Per-class shuffled split so each part keeps the label ratio. Deterministic
/// in `seed`. Throws Error when fractions are negative or do not sum to 1.
std::vector<Split> stratified_split(std::span<const int> labels, SplitFractions fractions,
                                    std::uint64_t seed);

/// D = {χ1, χ2, y}: topological rows, text embedding rows, labels, splits.
struct LabeledDataset {
    std::vector<PaperId> ids;
    std::vector<std::int32_t> years;
    Matrix topo;
    Matrix text;
    std::vector<int> labels;
    std::vector<Split> split;

    std::size_t size() const { return labels.size(); }
    std::vector<std::size_t> rows_in(Split which) const;
};

struct MixedConfig {
    std::size_t hidden1 = 16;
    std::size_t hidden2 = 64;
    TrainConfig train;
};

/// Γ1 over standardized topological features, Γ2 over embeddings, and the
/// logistic mixer Γ1,2 over their two output probabilities.
struct MixedModel {
    Standardizer standardizer;
    MlpParams gamma1;
    MlpParams gamma2;
    MlpParams gamma12;
};

struct MixedTrainReport {
    TrainResult gamma1;
    TrainResult gamma2;
    TrainResult gamma12;
};

MixedModel train_mixed(const LabeledDataset& dataset, const MixedConfig& config,
                       MixedTrainReport* report = nullptr);

struct Prediction {
    double topo = 0.5;                ///< ŷ1
    std::optional<double> text;       ///< ŷ2, absent without an embedding
    double mixed = 0.5;               ///< ŷ12 (falls back to ŷ1 without an embedding)
    int label = 0;                    ///< 1 iff mixed >= 0.5
    bool text_missing = false;
};

/// `topo` holds raw (unstandardized) features.
Prediction predict(const MixedModel& model, std::span<const double> topo,
                   std::optional<std::span<const double>> text);

struct WeightEntry {
    std::string feature;
    double weight = 0.0;
};

/// Learned weights sorted by decreasing magnitude.
struct WeightReport {
    std::vector<WeightEntry> entries;
    double bias = 0.0;
    double validation_f1 = 0.0;

    double weight_of(std::string_view feature) const;
};

WeightReport make_weight_report(const MlpParams& logistic, std::span<const std::string> names,
                                double validation_f1);
std::string format_weight_report(const WeightReport& report, std::string_view title);

struct PerceptronReport {
    MlpParams raw_params;
    MlpParams standardized_params;
    Standardizer standardizer;
    WeightReport raw;
    WeightReport standardized;
};

/// Trains the simplified perceptron (hidden_dim 0) twice: on raw features and
/// on features standardized with training-split statistics.
PerceptronReport train_simple_perceptron(const Matrix& features, std::span<const int> labels,
                                         std::span<const Split> split,
                                         std::span<const std::string> names,
                                         const TrainConfig& config);

} // namespace laurel
