#include "laurel/mixed_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "laurel/errors.hpp"
#include "random.hpp"

namespace laurel {

namespace {

Dataset take(const Matrix& x, std::span<const int> labels, std::span<const std::size_t> rows) {
    Dataset d;
    d.x = x.select_rows(rows);
    d.y.reserve(rows.size());
    for (auto r : rows)
        d.y.push_back(labels[r]);
    return d;
}

} // namespace

std::vector<Split> stratified_split(std::span<const int> labels, SplitFractions f,
                                    std::uint64_t seed) {
    if (f.train < 0 || f.validation < 0 || f.test < 0 ||
        std::abs(f.train + f.validation + f.test - 1.0) > 1e-9)
        throw Error("split fractions must be non-negative and sum to 1");
    std::vector<Split> split(labels.size(), Split::Train);
    detail::Rng rng(seed);
    for (int cls : {0, 1}) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == cls)
                members.push_back(i);
        detail::shuffle(std::span<std::size_t>(members), rng);
        const auto n = static_cast<double>(members.size());
        const auto n_train = static_cast<std::size_t>(std::llround(n * f.train));
        const auto n_val = std::min(members.size() - n_train,
                                    static_cast<std::size_t>(std::llround(n * f.validation)));
        for (std::size_t k = 0; k < members.size(); ++k)
            split[members[k]] = k < n_train ? Split::Train
                                : k < n_train + n_val ? Split::Validation
                                                      : Split::Test;
    }
    return split;
}

std::vector<std::size_t> LabeledDataset::rows_in(Split which) const {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < split.size(); ++i)
        if (split[i] == which)
            rows.push_back(i);
    return rows;
}

MixedModel train_mixed(const LabeledDataset& data, const MixedConfig& config,
                       MixedTrainReport* report) {
    if (data.topo.rows != data.size() || data.text.rows != data.size() ||
        data.split.size() != data.size())
        throw TrainingError("dataset needs both feature families for every row");
    const auto train_rows = data.rows_in(Split::Train);
    const auto val_rows = data.rows_in(Split::Validation);

    MixedModel model;
    model.standardizer = Standardizer::fit(data.topo.select_rows(train_rows));
    const Matrix topo = model.standardizer.transform(data.topo);

    TrainConfig cfg1 = config.train;
    TrainConfig cfg2 = config.train;
    TrainConfig cfg12 = config.train;
    cfg2.seed = config.train.seed + 1;
    cfg12.seed = config.train.seed + 2;

    auto r1 = train(init_params(topo.cols, config.hidden1, cfg1.seed),
                    take(topo, data.labels, train_rows), take(topo, data.labels, val_rows), cfg1);
    auto r2 = train(init_params(data.text.cols, config.hidden2, cfg2.seed),
                    take(data.text, data.labels, train_rows),
                    take(data.text, data.labels, val_rows), cfg2);
    model.gamma1 = r1.params;
    model.gamma2 = r2.params;

    Matrix stacked(data.size(), 2);
    for (std::size_t i = 0; i < data.size(); ++i) {
        stacked(i, 0) = forward(model.gamma1, topo.row(i));
        stacked(i, 1) = forward(model.gamma2, data.text.row(i));
    }
    auto r12 = train(init_params(2, 0, cfg12.seed), take(stacked, data.labels, train_rows),
                     take(stacked, data.labels, val_rows), cfg12);
    model.gamma12 = r12.params;

    if (report)
        *report = {std::move(r1), std::move(r2), std::move(r12)};
    return model;
}

Prediction predict(const MixedModel& model, std::span<const double> topo,
                   std::optional<std::span<const double>> text) {
    Prediction p;
    p.topo = forward(model.gamma1, model.standardizer.transform_row(topo));
    if (text) {
        p.text = forward(model.gamma2, *text);
        const double pair[2] = {p.topo, *p.text};
        p.mixed = forward(model.gamma12, pair);
    } else {
        p.text_missing = true;
        p.mixed = p.topo;
    }
    p.label = p.mixed >= 0.5 ? 1 : 0;
    return p;
}

double WeightReport::weight_of(std::string_view feature) const {
    for (const auto& e : entries)
        if (e.feature == feature)
            return e.weight;
    throw Error("no weight for feature " + std::string(feature));
}

WeightReport make_weight_report(const MlpParams& logistic, std::span<const std::string> names,
                                double validation_f1) {
    if (logistic.hidden_dim != 0)
        throw Error("weight reports need a perceptron without hidden layer");
    if (names.size() != logistic.input_dim)
        throw Error("feature names do not match model input");
    WeightReport r;
    for (std::size_t i = 0; i < names.size(); ++i)
        r.entries.push_back({names[i], logistic.w2[i]});
    std::stable_sort(r.entries.begin(), r.entries.end(), [](const auto& a, const auto& b) {
        return std::abs(a.weight) > std::abs(b.weight);
    });
    r.bias = logistic.b2;
    r.validation_f1 = validation_f1;
    return r;
}

std::string format_weight_report(const WeightReport& report, std::string_view title) {
    std::ostringstream out;
    out << title << " (validation macro-F1 " << report.validation_f1 << ")\n";
    std::size_t width = 4;
    for (const auto& e : report.entries)
        width = std::max(width, e.feature.size());
    out.setf(std::ios::fixed);
    out.precision(3);
    for (const auto& e : report.entries) {
        out << "  " << e.feature << std::string(width - e.feature.size(), ' ') << "  ";
        out.width(9);
        out << e.weight << '\n';
    }
    out << "  bias" << std::string(width - 4, ' ') << "  ";
    out.width(9);
    out << report.bias << '\n';
    return out.str();
}

PerceptronReport train_simple_perceptron(const Matrix& features, std::span<const int> labels,
                                         std::span<const Split> split,
                                         std::span<const std::string> names,
                                         const TrainConfig& config) {
    if (features.rows != labels.size() || split.size() != labels.size())
        throw TrainingError("features, labels and split differ in length");
    std::vector<std::size_t> train_rows, val_rows;
    for (std::size_t i = 0; i < split.size(); ++i) {
        if (split[i] == Split::Train)
            train_rows.push_back(i);
        else if (split[i] == Split::Validation)
            val_rows.push_back(i);
    }

    PerceptronReport out;
    auto raw = train(init_params(features.cols, 0, config.seed), take(features, labels, train_rows),
                     take(features, labels, val_rows), config);
    out.raw_params = raw.params;
    out.raw = make_weight_report(raw.params, names, raw.best_validation_f1);

    out.standardizer = Standardizer::fit(features.select_rows(train_rows));
    const Matrix z = out.standardizer.transform(features);
    auto standardized = train(init_params(z.cols, 0, config.seed), take(z, labels, train_rows),
                              take(z, labels, val_rows), config);
    out.standardized_params = standardized.params;
    out.standardized = make_weight_report(standardized.params, names,
                                          standardized.best_validation_f1);
    return out;
}

} // namespace laurel
