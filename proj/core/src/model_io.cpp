#include "laurel/model_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "laurel/errors.hpp"

namespace laurel {

using nlohmann::json;

namespace {

json params_json(const MlpParams& p) {
    return {{"input_dim", p.input_dim}, {"hidden_dim", p.hidden_dim}, {"w1", p.w1},
            {"b1", p.b1}, {"w2", p.w2}, {"b2", p.b2}};
}

MlpParams params_from(const json& j) {
    MlpParams p;
    p.input_dim = j.at("input_dim").get<std::size_t>();
    p.hidden_dim = j.at("hidden_dim").get<std::size_t>();
    p.w1 = j.at("w1").get<std::vector<double>>();
    p.b1 = j.at("b1").get<std::vector<double>>();
    p.w2 = j.at("w2").get<std::vector<double>>();
    p.b2 = j.at("b2").get<double>();
    p.check_shapes();
    return p;
}

const char* optimizer_name(Optimizer o) { return o == Optimizer::Adam ? "adam" : "sgd"; }

Optimizer optimizer_from(const std::string& s) {
    if (s == "adam")
        return Optimizer::Adam;
    if (s == "sgd")
        return Optimizer::Sgd;
    throw FormatError("unknown optimizer '" + s + "'");
}

} // namespace

std::string model_to_json(const ModelFile& f) {
    const auto& t = f.config.train;
    json j;
    j["schema_version"] = kModelSchemaVersion;
    j["feature_names"] = f.feature_names;
    j["standardizer"] = {{"mean", f.model.standardizer.mean},
                         {"stddev", f.model.standardizer.stddev}};
    j["gamma1"] = params_json(f.model.gamma1);
    j["gamma2"] = params_json(f.model.gamma2);
    j["gamma12"] = params_json(f.model.gamma12);
    j["config"] = {{"hidden1", f.config.hidden1},
                   {"hidden2", f.config.hidden2},
                   {"learning_rate", t.learning_rate},
                   {"epochs", t.epochs},
                   {"batch_size", t.batch_size},
                   {"patience", t.patience},
                   {"class_weighting", t.class_weighting},
                   {"optimizer", optimizer_name(t.optimizer)},
                   {"split", {f.fractions.train, f.fractions.validation, f.fractions.test}}};
    j["seed"] = t.seed;
    j["held_out_ids"] = f.held_out_ids;
    return j.dump(1) + "\n";
}

ModelFile model_from_json(const std::string& text) {
    try {
        const auto j = json::parse(text);
        const int version = j.at("schema_version").get<int>();
        if (version != kModelSchemaVersion)
            throw FormatError("model schema version " + std::to_string(version) +
                              " is not supported (expected " +
                              std::to_string(kModelSchemaVersion) + ")");
        ModelFile f;
        f.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        f.model.standardizer.mean = j.at("standardizer").at("mean").get<std::vector<double>>();
        f.model.standardizer.stddev = j.at("standardizer").at("stddev").get<std::vector<double>>();
        f.model.gamma1 = params_from(j.at("gamma1"));
        f.model.gamma2 = params_from(j.at("gamma2"));
        f.model.gamma12 = params_from(j.at("gamma12"));
        const auto& c = j.at("config");
        f.config.hidden1 = c.at("hidden1").get<std::size_t>();
        f.config.hidden2 = c.at("hidden2").get<std::size_t>();
        f.config.train.learning_rate = c.at("learning_rate").get<double>();
        f.config.train.epochs = c.at("epochs").get<int>();
        f.config.train.batch_size = c.at("batch_size").get<std::size_t>();
        f.config.train.patience = c.at("patience").get<int>();
        f.config.train.class_weighting = c.at("class_weighting").get<bool>();
        f.config.train.optimizer = optimizer_from(c.at("optimizer").get<std::string>());
        const auto split = c.at("split").get<std::vector<double>>();
        if (split.size() != 3)
            throw FormatError("split must list three fractions");
        f.fractions = {split[0], split[1], split[2]};
        f.config.train.seed = j.at("seed").get<std::uint64_t>();
        f.held_out_ids = j.at("held_out_ids").get<std::vector<PaperId>>();
        if (f.model.standardizer.mean.size() != f.model.gamma1.input_dim ||
            f.model.standardizer.stddev.size() != f.model.gamma1.input_dim ||
            f.model.gamma12.input_dim != 2 || f.model.gamma12.hidden_dim != 0)
            throw FormatError("model layer shapes are inconsistent");
        return f;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed model file: ") + e.what());
    } catch (const FormatError&) {
        throw;
    } catch (const Error& e) {
        throw FormatError(std::string("malformed model file: ") + e.what());
    }
}

void save_model(const std::filesystem::path& path, const ModelFile& file) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write model " + path.string());
    out << model_to_json(file);
    if (!out)
        throw IoError("write failure on " + path.string());
}

ModelFile load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open model " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json(buf.str());
}

} // namespace laurel
