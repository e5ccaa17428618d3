#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "laurel/matrix.hpp"

namespace laurel {

/**
 * Parameters of a one-hidden-layer perceptron with a rectifier hidden layer
 * and a logistic output unit. hidden_dim == 0 degenerates to a plain logistic
 * unit: w1/b1 are empty and w2 has input_dim entries.
 */
struct MlpParams {
    std::size_t input_dim = 0;
    std::size_t hidden_dim = 0;
    std::vector<double> w1;  ///< hidden_dim x input_dim, row-major
    std::vector<double> b1;  ///< hidden_dim
    std::vector<double> w2;  ///< hidden_dim, or input_dim when hidden_dim == 0
    double b2 = 0.0;

    static MlpParams zeros(std::size_t input_dim, std::size_t hidden_dim);

    std::size_t parameter_count() const { return w1.size() + b1.size() + w2.size() + 1; }
    /// Order: w1, b1, w2, b2.
    std::vector<double> flatten() const;
    void assign(std::span<const double> flat);
    bool is_finite() const;
    void check_shapes() const;

    bool operator==(const MlpParams&) const = default;
};

/// Fan-balanced uniform initialization, biases zero.
MlpParams init_params(std::size_t input_dim, std::size_t hidden_dim, std::uint64_t seed);

/// Pre-sigmoid output.
double logit(const MlpParams& params, std::span<const double> x);
/// Probability, strictly inside (0, 1).
double forward(const MlpParams& params, std::span<const double> x);
std::vector<double> forward_all(const MlpParams& params, const Matrix& x);

struct ClassWeights {
    double negative = 1.0;
    double positive = 1.0;
};

/// N / (2 N_c) per class; a missing class gets weight 1.
ClassWeights inverse_frequency_weights(std::span<const int> labels);

/// Mean (class-weighted) binary cross-entropy over the selected rows.
double bce_loss(const MlpParams& params, const Matrix& x, std::span<const int> y,
                std::span<const std::size_t> rows, ClassWeights weights = {});
double bce_loss(const MlpParams& params, const Matrix& x, std::span<const int> y,
                ClassWeights weights = {});

/// Exact gradient of bce_loss, shaped like the parameters.
MlpParams gradient(const MlpParams& params, const Matrix& x, std::span<const int> y,
                   std::span<const std::size_t> rows, ClassWeights weights = {});
MlpParams gradient(const MlpParams& params, const Matrix& x, std::span<const int> y,
                   ClassWeights weights = {});

enum class Optimizer { Sgd, Adam };

struct TrainConfig {
    double learning_rate = 1e-2;
    int epochs = 500;
    std::size_t batch_size = 64;
    std::uint64_t seed = 42;
    int patience = 50;
    bool class_weighting = false;
    Optimizer optimizer = Optimizer::Adam;
};

struct Dataset {
    Matrix x;
    std::vector<int> y;

    std::size_t size() const { return y.size(); }
};

struct TrainResult {
    MlpParams params;      ///< parameters of the best validation epoch
    int best_epoch = 0;    ///< 1-based
    int epochs_run = 0;
    double best_validation_f1 = 0.0;
    std::vector<double> train_loss;     ///< full training-split loss after each epoch
    std::vector<double> validation_f1;  ///< macro-F1 at 0.5 after each epoch
};

/**
 * Mini-batch training on binary cross-entropy. After every epoch the
 * validation macro-F1 at threshold 0.5 is measured; the best epoch's
 * parameters are returned (ties broken by lower validation loss) and training
 * stops after `patience` epochs in which neither the validation F1 nor the
 * validation loss improved. Deterministic per seed.
 * Throws TrainingError on a non-finite loss.
 */
TrainResult train(MlpParams params, const Dataset& train_split, const Dataset& validation_split,
                  const TrainConfig& config);

/// Per-feature z-scoring with training-split statistics (population deviation).
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stddev;  ///< constant features get 1

    static Standardizer fit(const Matrix& x);
    Matrix transform(const Matrix& x) const;
    std::vector<double> transform_row(std::span<const double> row) const;
};

} // namespace laurel
