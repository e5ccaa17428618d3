#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "laurel/mixed_model.hpp"

namespace laurel {

inline constexpr int kModelSchemaVersion = 1;

/// Everything persisted in a model JSON file.
struct ModelFile {
    MixedModel model;
    MixedConfig config;
    SplitFractions fractions;
    std::vector<std::string> feature_names;
    std::vector<PaperId> held_out_ids;  ///< test-split papers
};

std::string model_to_json(const ModelFile& file);
/// Throws FormatError on malformed JSON or a schema version mismatch.
ModelFile model_from_json(const std::string& text);

void save_model(const std::filesystem::path& path, const ModelFile& file);
ModelFile load_model(const std::filesystem::path& path);

} // namespace laurel
