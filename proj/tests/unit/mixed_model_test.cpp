#include <doctest.h>

#include <random>

#include "laurel/errors.hpp"
#include "laurel/metrics.hpp"
#include "laurel/mixed_model.hpp"
#include "laurel/model_io.hpp"

using namespace laurel;

namespace {

// Topological family decides the label; the text family is pure noise.
LabeledDataset topo_driven_dataset(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    LabeledDataset d;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> topo(5), text(8);
        for (auto& v : topo)
            v = nd(rng);
        for (auto& v : text)
            v = nd(rng);
        d.topo.push_row(topo);
        d.text.push_row(text);
        d.labels.push_back(topo[0] + 0.5 * topo[2] > 0.3);
        d.ids.push_back(i);
        d.years.push_back(2000);
    }
    d.split = stratified_split(d.labels, {}, seed);
    return d;
}

double validation_f1(const std::vector<double>& scores, const LabeledDataset& d,
                     const std::vector<std::size_t>& rows) {
    std::vector<double> s;
    std::vector<int> y;
    for (auto r : rows) {
        s.push_back(scores[r]);
        y.push_back(d.labels[r]);
    }
    return f1_macro(confusion(s, y));
}

MixedConfig quick_config() {
    MixedConfig c;
    c.hidden1 = 8;
    c.hidden2 = 8;
    c.train.epochs = 150;
    c.train.patience = 30;
    return c;
}

}  // namespace

TEST_CASE("stratified split keeps class ratios and is deterministic") {
    std::vector<int> y(1000, 0);
    for (std::size_t i = 0; i < 100; ++i)
        y[i * 10] = 1;
    auto s = stratified_split(y, {}, 5);
    CHECK(s == stratified_split(y, {}, 5));
    CHECK(s != stratified_split(y, {}, 6));
    std::size_t counts[3][2] = {};
    for (std::size_t i = 0; i < y.size(); ++i)
        ++counts[int(s[i])][y[i]];
    CHECK(counts[0][1] == 70);
    CHECK(counts[1][1] == 15);
    CHECK(counts[2][1] == 15);
    CHECK(counts[0][0] == 630);
    CHECK(counts[1][0] == 135);
    CHECK(counts[2][0] == 135);
    CHECK_THROWS_AS(stratified_split(y, {0.5, 0.3, 0.3}, 1), Error);
    CHECK_THROWS_AS(stratified_split(y, {1.2, -0.1, -0.1}, 1), Error);
}

TEST_CASE("an untrained mixer outputs one half, which is class one") {
    MixedModel m;
    m.standardizer.mean.assign(5, 0.0);
    m.standardizer.stddev.assign(5, 1.0);
    m.gamma1 = init_params(5, 4, 1);
    m.gamma2 = init_params(3, 4, 2);
    m.gamma12 = MlpParams::zeros(2, 0);
    std::vector<double> topo{1, 2, 3, 4, 5}, text{0.1, 0.2, 0.3};
    auto p = predict(m, topo, std::span<const double>(text));
    CHECK(p.mixed == 0.5);
    CHECK(p.label == 1);
    CHECK(p.text.has_value());
    CHECK_FALSE(p.text_missing);
}

TEST_CASE("a mixer that ignores text follows the topological decision") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    MixedModel m;
    m.standardizer.mean.assign(5, 0.0);
    m.standardizer.stddev.assign(5, 1.0);
    m.gamma1 = init_params(5, 6, 11);
    m.gamma2 = init_params(3, 6, 12);
    m.gamma12 = MlpParams::zeros(2, 0);
    m.gamma12.w2 = {1000.0, 0.0};
    m.gamma12.b2 = -500.0;
    for (int i = 0; i < 300; ++i) {
        std::vector<double> topo(5), text(3);
        for (auto& v : topo)
            v = 2 * nd(rng);
        for (auto& v : text)
            v = nd(rng);
        auto p = predict(m, topo, std::span<const double>(text));
        if (std::abs(p.topo - 0.5) < 1e-9)
            continue;
        CHECK(p.label == int(p.topo > 0.5));
        CHECK(p.topo > 0.0);
        CHECK(p.topo < 1.0);
        CHECK(*p.text > 0.0);
        CHECK(*p.text < 1.0);
        CHECK(p.mixed > 0.0);
        CHECK(p.mixed < 1.0);
    }
}

TEST_CASE("missing embedding falls back to the topological output") {
    MixedModel m;
    m.standardizer.mean.assign(5, 0.0);
    m.standardizer.stddev.assign(5, 1.0);
    m.gamma1 = init_params(5, 4, 1);
    m.gamma2 = init_params(3, 4, 2);
    m.gamma12 = init_params(2, 0, 3);
    std::vector<double> topo{0.3, -1, 2, 0, 0.5};
    auto p = predict(m, topo, std::nullopt);
    CHECK(p.text_missing);
    CHECK_FALSE(p.text.has_value());
    CHECK(p.mixed == p.topo);
    CHECK(p.label == int(p.topo >= 0.5));
    std::vector<double> bad{1, 2};
    CHECK_THROWS_AS(predict(m, bad, std::nullopt), Error);
}

TEST_CASE("mixing never does worse than the uninformative family") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        auto d = topo_driven_dataset(seed, 1200);
        MixedTrainReport rep;
        auto m = train_mixed(d, quick_config(), &rep);
        std::vector<double> mixed, text;
        for (std::size_t r = 0; r < d.size(); ++r) {
            auto p = predict(m, d.topo.row(r), std::span<const double>(d.text.row(r)));
            mixed.push_back(p.mixed);
            text.push_back(*p.text);
        }
        auto val = d.rows_in(Split::Validation);
        CHECK(validation_f1(mixed, d, val) >= validation_f1(text, d, val));
        CHECK(m.gamma12.input_dim == 2);
        CHECK(m.gamma12.hidden_dim == 0);
        CHECK(m.gamma1.hidden_dim == 8);
    }
}

TEST_CASE("mixed training is deterministic") {
    auto d = topo_driven_dataset(9, 400);
    auto a = train_mixed(d, quick_config());
    auto b = train_mixed(d, quick_config());
    CHECK(a.gamma1 == b.gamma1);
    CHECK(a.gamma2 == b.gamma2);
    CHECK(a.gamma12 == b.gamma12);
}

TEST_CASE("simple perceptron finds the negative density weight") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u;
    Matrix x;
    std::vector<int> y;
    for (int i = 0; i < 1000; ++i) {
        const int label = i % 5 == 0;
        const double density = label ? 0.1 * u(rng) : 0.3 + 0.4 * u(rng);
        x.push_row(std::vector<double>{2 + 3 * u(rng), double(2 + rng() % 3), density, u(rng), u(rng)});
        y.push_back(label);
    }
    auto split = stratified_split(y, {}, 4);
    std::vector<std::string> names{"avg_out_degree", "diameter", "density", "transitivity", "avg_local_clustering"};
    TrainConfig cfg;
    auto rep = train_simple_perceptron(x, y, split, names, cfg);
    CHECK(rep.raw.weight_of("density") < 0.0);
    CHECK(rep.standardized.weight_of("density") < 0.0);
    CHECK(rep.raw.entries.size() == 5);
    for (std::size_t i = 1; i < rep.raw.entries.size(); ++i)
        CHECK(std::abs(rep.raw.entries[i - 1].weight) >= std::abs(rep.raw.entries[i].weight));
    CHECK_THROWS_AS(rep.raw.weight_of("missing"), Error);
}

TEST_CASE("random labels give chance-level validation F1") {
    double total = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> nd;
        Matrix x;
        std::vector<int> y;
        for (int i = 0; i < 4000; ++i) {
            x.push_row(std::vector<double>{nd(rng), nd(rng), nd(rng), nd(rng), nd(rng)});
            y.push_back(int(rng() % 2));
        }
        auto split = stratified_split(y, {}, seed);
        std::vector<std::string> names{"a", "b", "c", "d", "e"};
        TrainConfig cfg;
        cfg.seed = seed;
        auto rep = train_simple_perceptron(x, y, split, names, cfg);
        CHECK(rep.raw.validation_f1 >= 0.4);
        CHECK(rep.raw.validation_f1 <= 0.6);
        total += rep.raw.validation_f1;
    }
    CHECK(total / 10 >= 0.4);
    CHECK(total / 10 <= 0.6);
}

TEST_CASE("weight report text lists features by magnitude") {
    auto p = MlpParams::zeros(3, 0);
    p.w2 = {0.5, -65.9, 7.0};
    p.b2 = 1.25;
    std::vector<std::string> names{"avg_out_degree", "density", "avg_local_clustering"};
    auto r = make_weight_report(p, names, 0.8);
    REQUIRE(r.entries.size() == 3);
    CHECK(r.entries[0].feature == "density");
    CHECK(r.entries[1].feature == "avg_local_clustering");
    CHECK(r.entries[2].feature == "avg_out_degree");
    CHECK(r.bias == 1.25);
    auto text = format_weight_report(r, "raw");
    CHECK(text.find("density") < text.find("avg_local_clustering"));
    CHECK(text.find("-65.9") != std::string::npos);
}

TEST_CASE("model JSON roundtrip preserves predictions bitwise") {
    auto d = topo_driven_dataset(5, 300);
    ModelFile f;
    f.model = train_mixed(d, quick_config());
    f.config = quick_config();
    f.feature_names = {"avg_out_degree", "diameter", "density", "transitivity", "avg_local_clustering"};
    f.held_out_ids = {3, 1, 4};
    const auto text = model_to_json(f);
    auto g = model_from_json(text);
    CHECK(model_to_json(g) == text);
    CHECK(g.held_out_ids == f.held_out_ids);
    CHECK(g.model.gamma1 == f.model.gamma1);
    CHECK(g.model.gamma2 == f.model.gamma2);
    CHECK(g.model.gamma12 == f.model.gamma12);
    CHECK(g.model.standardizer.mean == f.model.standardizer.mean);
    for (std::size_t r = 0; r < 20; ++r) {
        auto a = predict(f.model, d.topo.row(r), std::span<const double>(d.text.row(r)));
        auto b = predict(g.model, d.topo.row(r), std::span<const double>(d.text.row(r)));
        CHECK(a.mixed == b.mixed);
    }
}

TEST_CASE("model JSON with another schema version is rejected") {
    auto d = topo_driven_dataset(6, 200);
    ModelFile f;
    f.model = train_mixed(d, quick_config());
    f.feature_names = {"a", "b", "c", "d", "e"};
    auto text = model_to_json(f);
    const std::string key = "\"schema_version\": 1";
    const auto at = text.find(key);
    REQUIRE(at != std::string::npos);
    text.replace(at, key.size(), "\"schema_version\": 2");
    CHECK_THROWS_AS(model_from_json(text), FormatError);
    CHECK_THROWS_AS(model_from_json("{not json"), FormatError);
}
