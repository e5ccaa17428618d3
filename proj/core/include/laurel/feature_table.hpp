#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "laurel/topo_features.hpp"
#include "laurel/types.hpp"

namespace laurel {

/// One line of the topological feature dump.
struct FeatureRow {
    PaperId paper_id = 0;
    TopoFeatures features;
    int label = 0;
    std::int32_t year = 0;
};

/// One line of phi_theta.csv.
struct ScoreRow {
    PaperId paper_id = 0;
    int label = 0;
    double phi = 0.0;
    double theta = 0.0;
};

inline constexpr const char* kFeatureCsvHeader =
    "paper_id,avg_out_degree,diameter,density,transitivity,avg_local_clustering,label,year";
inline constexpr const char* kScoreCsvHeader = "paper_id,label,phi,theta";

void write_feature_csv(std::ostream& out, std::span<const FeatureRow> rows);
std::vector<FeatureRow> read_feature_csv(std::istream& in);
void save_feature_csv(const std::filesystem::path& path, std::span<const FeatureRow> rows);
std::vector<FeatureRow> load_feature_csv(const std::filesystem::path& path);

void write_score_csv(std::ostream& out, std::span<const ScoreRow> rows);
std::vector<ScoreRow> read_score_csv(std::istream& in);
void save_score_csv(const std::filesystem::path& path, std::span<const ScoreRow> rows);
std::vector<ScoreRow> load_score_csv(const std::filesystem::path& path);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

} // namespace laurel
