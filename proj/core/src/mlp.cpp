#include "laurel/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "laurel/errors.hpp"
#include "laurel/metrics.hpp"
#include "random.hpp"

namespace laurel {

namespace {

double sigmoid(double z) {
    if (z >= 0.0)
        return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

/// log(1 + e^z) without overflow.
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double class_weight(ClassWeights w, int y) { return y ? w.positive : w.negative; }

std::vector<std::size_t> all_rows(std::size_t n) {
    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return rows;
}

void check_input(const MlpParams& p, std::size_t dim) {
    if (dim != p.input_dim)
        throw Error("input dimension " + std::to_string(dim) + " does not match model input " +
                    std::to_string(p.input_dim));
}

} // namespace

MlpParams MlpParams::zeros(std::size_t input_dim, std::size_t hidden_dim) {
    MlpParams p;
    p.input_dim = input_dim;
    p.hidden_dim = hidden_dim;
    p.w1.assign(hidden_dim * input_dim, 0.0);
    p.b1.assign(hidden_dim, 0.0);
    p.w2.assign(hidden_dim == 0 ? input_dim : hidden_dim, 0.0);
    return p;
}

std::vector<double> MlpParams::flatten() const {
    std::vector<double> flat;
    flat.reserve(parameter_count());
    flat.insert(flat.end(), w1.begin(), w1.end());
    flat.insert(flat.end(), b1.begin(), b1.end());
    flat.insert(flat.end(), w2.begin(), w2.end());
    flat.push_back(b2);
    return flat;
}

void MlpParams::assign(std::span<const double> flat) {
    if (flat.size() != parameter_count())
        throw Error("flat parameter vector has the wrong length");
    auto it = flat.begin();
    std::copy_n(it, w1.size(), w1.begin());
    it += static_cast<std::ptrdiff_t>(w1.size());
    std::copy_n(it, b1.size(), b1.begin());
    it += static_cast<std::ptrdiff_t>(b1.size());
    std::copy_n(it, w2.size(), w2.begin());
    it += static_cast<std::ptrdiff_t>(w2.size());
    b2 = *it;
}

bool MlpParams::is_finite() const {
    auto finite = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    };
    return finite(w1) && finite(b1) && finite(w2) && std::isfinite(b2);
}

void MlpParams::check_shapes() const {
    if (input_dim == 0)
        throw Error("model input dimension must be positive");
    if (w1.size() != hidden_dim * input_dim || b1.size() != hidden_dim ||
        w2.size() != (hidden_dim == 0 ? input_dim : hidden_dim))
        throw Error("inconsistent parameter shapes");
}

MlpParams init_params(std::size_t input_dim, std::size_t hidden_dim, std::uint64_t seed) {
    if (input_dim == 0)
        throw Error("input_dim must be at least 1");
    MlpParams p = MlpParams::zeros(input_dim, hidden_dim);
    detail::Rng rng(seed);
    auto fill = [&](std::vector<double>& w, std::size_t fan_in, std::size_t fan_out) {
        const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        for (auto& x : w)
            x = detail::uniform(rng, -bound, bound);
    };
    if (hidden_dim == 0) {
        fill(p.w2, input_dim, 1);
    } else {
        fill(p.w1, input_dim, hidden_dim);
        fill(p.w2, hidden_dim, 1);
    }
    return p;
}

double logit(const MlpParams& p, std::span<const double> x) {
    check_input(p, x.size());
    double z = p.b2;
    if (p.hidden_dim == 0) {
        for (std::size_t i = 0; i < p.input_dim; ++i)
            z += p.w2[i] * x[i];
        return z;
    }
    for (std::size_t h = 0; h < p.hidden_dim; ++h) {
        double a = p.b1[h];
        const double* row = p.w1.data() + h * p.input_dim;
        for (std::size_t i = 0; i < p.input_dim; ++i)
            a += row[i] * x[i];
        if (a > 0.0)
            z += p.w2[h] * a;
    }
    return z;
}

double forward(const MlpParams& p, std::span<const double> x) {
    return std::clamp(sigmoid(logit(p, x)), std::numeric_limits<double>::min(),
                      std::nextafter(1.0, 0.0));
}

std::vector<double> forward_all(const MlpParams& p, const Matrix& x) {
    std::vector<double> out(x.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
        out[i] = forward(p, x.row(i));
    return out;
}

ClassWeights inverse_frequency_weights(std::span<const int> labels) {
    const double n = static_cast<double>(labels.size());
    const double pos = static_cast<double>(std::count(labels.begin(), labels.end(), 1));
    const double neg = n - pos;
    ClassWeights w;
    if (pos > 0)
        w.positive = n / (2.0 * pos);
    if (neg > 0)
        w.negative = n / (2.0 * neg);
    return w;
}

double bce_loss(const MlpParams& p, const Matrix& x, std::span<const int> y,
                std::span<const std::size_t> rows, ClassWeights weights) {
    if (rows.empty())
        throw Error("loss over an empty batch");
    double total = 0.0;
    for (std::size_t r : rows) {
        const double z = logit(p, x.row(r));
        total += class_weight(weights, y[r]) * (softplus(z) - y[r] * z);
    }
    return total / static_cast<double>(rows.size());
}

double bce_loss(const MlpParams& p, const Matrix& x, std::span<const int> y,
                ClassWeights weights) {
    const auto rows = all_rows(x.rows);
    return bce_loss(p, x, y, rows, weights);
}

MlpParams gradient(const MlpParams& p, const Matrix& x, std::span<const int> y,
                   std::span<const std::size_t> rows, ClassWeights weights) {
    if (rows.empty())
        throw Error("gradient over an empty batch");
    check_input(p, x.cols);
    MlpParams g = MlpParams::zeros(p.input_dim, p.hidden_dim);
    const double inv_batch = 1.0 / static_cast<double>(rows.size());
    std::vector<double> pre(p.hidden_dim);

    for (std::size_t r : rows) {
        const auto xr = x.row(r);
        double z = p.b2;
        for (std::size_t h = 0; h < p.hidden_dim; ++h) {
            double a = p.b1[h];
            const double* wrow = p.w1.data() + h * p.input_dim;
            for (std::size_t i = 0; i < p.input_dim; ++i)
                a += wrow[i] * xr[i];
            pre[h] = a;
            if (a > 0.0)
                z += p.w2[h] * a;
        }
        if (p.hidden_dim == 0)
            for (std::size_t i = 0; i < p.input_dim; ++i)
                z += p.w2[i] * xr[i];

        const double dz = class_weight(weights, y[r]) * (sigmoid(z) - y[r]) * inv_batch;
        g.b2 += dz;
        if (p.hidden_dim == 0) {
            for (std::size_t i = 0; i < p.input_dim; ++i)
                g.w2[i] += dz * xr[i];
            continue;
        }
        for (std::size_t h = 0; h < p.hidden_dim; ++h) {
            if (pre[h] <= 0.0)
                continue;
            g.w2[h] += dz * pre[h];
            const double da = dz * p.w2[h];
            g.b1[h] += da;
            double* grow = g.w1.data() + h * p.input_dim;
            for (std::size_t i = 0; i < p.input_dim; ++i)
                grow[i] += da * xr[i];
        }
    }
    return g;
}

MlpParams gradient(const MlpParams& p, const Matrix& x, std::span<const int> y,
                   ClassWeights weights) {
    const auto rows = all_rows(x.rows);
    return gradient(p, x, y, rows, weights);
}

TrainResult train(MlpParams params, const Dataset& train_split, const Dataset& validation_split,
                  const TrainConfig& config) {
    params.check_shapes();
    if (train_split.size() == 0 || validation_split.size() == 0)
        throw TrainingError("training and validation splits must be nonempty");
    if (config.learning_rate <= 0.0 || config.epochs <= 0 || config.batch_size == 0 ||
        config.patience <= 0)
        throw TrainingError("learning rate, epochs, batch size and patience must be positive");
    if (train_split.x.cols != params.input_dim || validation_split.x.cols != params.input_dim)
        throw TrainingError("dataset width does not match model input dimension");

    const ClassWeights weights =
        config.class_weighting ? inverse_frequency_weights(train_split.y) : ClassWeights{};

    detail::Rng rng(config.seed);
    auto order = all_rows(train_split.size());

    // Adam state.
    constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    std::vector<double> m(params.parameter_count(), 0.0), v(params.parameter_count(), 0.0);
    std::uint64_t step = 0;

    TrainResult result;
    result.params = params;
    double best_loss = std::numeric_limits<double>::infinity();
    double lowest_loss = best_loss;
    int since_best = 0;

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        detail::shuffle(std::span<std::size_t>(order), rng);
        for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
            const auto end = std::min(order.size(), start + config.batch_size);
            std::span<const std::size_t> batch(order.data() + start, end - start);
            const auto grad = gradient(params, train_split.x, train_split.y, batch, weights).flatten();
            auto flat = params.flatten();
            if (config.optimizer == Optimizer::Sgd) {
                for (std::size_t k = 0; k < flat.size(); ++k)
                    flat[k] -= config.learning_rate * grad[k];
            } else {
                ++step;
                const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
                const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
                for (std::size_t k = 0; k < flat.size(); ++k) {
                    m[k] = beta1 * m[k] + (1.0 - beta1) * grad[k];
                    v[k] = beta2 * v[k] + (1.0 - beta2) * grad[k] * grad[k];
                    flat[k] -= config.learning_rate * (m[k] / c1) / (std::sqrt(v[k] / c2) + eps);
                }
            }
            params.assign(flat);
        }

        const double loss = bce_loss(params, train_split.x, train_split.y, weights);
        if (!std::isfinite(loss) || !params.is_finite())
            throw TrainingError("non-finite training loss at epoch " + std::to_string(epoch) +
                                "; lower the learning rate");
        result.train_loss.push_back(loss);

        const auto probs = forward_all(params, validation_split.x);
        const double f1 = f1_macro(confusion(probs, validation_split.y, 0.5));
        const double val_loss = bce_loss(params, validation_split.x, validation_split.y, weights);
        result.validation_f1.push_back(f1);
        result.epochs_run = epoch;

        const bool better = epoch == 1 || f1 > result.best_validation_f1 + 1e-12 ||
                            (f1 > result.best_validation_f1 - 1e-12 && val_loss < best_loss);
        if (better) {
            result.params = params;
            result.best_epoch = epoch;
            result.best_validation_f1 = f1;
            best_loss = val_loss;
        }
        // F1 is piecewise constant, so a falling validation loss also counts
        // as progress for the patience counter.
        if (better || val_loss < lowest_loss * (1.0 - 1e-4))
            since_best = 0;
        else if (++since_best >= config.patience)
            break;
        lowest_loss = std::min(lowest_loss, val_loss);
    }
    return result;
}

Standardizer Standardizer::fit(const Matrix& x) {
    if (x.rows == 0)
        throw Error("cannot fit a standardizer on an empty matrix");
    Standardizer s;
    s.mean.assign(x.cols, 0.0);
    s.stddev.assign(x.cols, 0.0);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j)
            s.mean[j] += x(i, j);
    for (auto& m : s.mean)
        m /= static_cast<double>(x.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) {
            const double d = x(i, j) - s.mean[j];
            s.stddev[j] += d * d;
        }
    for (auto& sd : s.stddev) {
        sd = std::sqrt(sd / static_cast<double>(x.rows));
        if (!(sd > 0.0))
            sd = 1.0;
    }
    return s;
}

std::vector<double> Standardizer::transform_row(std::span<const double> row) const {
    if (row.size() != mean.size())
        throw Error("standardizer width mismatch");
    std::vector<double> out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j)
        out[j] = (row[j] - mean[j]) / stddev[j];
    return out;
}

Matrix Standardizer::transform(const Matrix& x) const {
    if (x.cols != mean.size())
        throw Error("standardizer width mismatch");
    Matrix out(x.rows, x.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j)
            out(i, j) = (x(i, j) - mean[j]) / stddev[j];
    return out;
}

} // namespace laurel
