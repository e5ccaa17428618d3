#pragma once

#include <cstdint>
#include <vector>

#include "laurel/corpus.hpp"
#include "laurel/embeddings.hpp"

namespace laurel {

/**
 * Knobs of the synthetic corpus generator.
 *
 * Papers belong to topical communities. Each paper draws a cohesion value:
 * the probability that a reference stays inside its own community. Cohesive
 * papers cite papers that cite each other (dense, clustered Δ-subgraphs);
 * winners are drawn with low cohesion. Embeddings are built around a hidden
 * "winner axis": winners sit in a narrow cosine band around it, non-winners
 * follow a broad distribution that overlaps the band.
 */
struct SynthConfig {
    std::size_t papers = 5000;
    std::size_t winners = 400;
    std::uint32_t dim = 32;
    std::uint64_t seed = 7;

    std::size_t community_size = 40;
    std::size_t min_refs = 6;
    std::size_t max_refs = 12;
    double background_fraction = 0.2;  ///< leading papers, never winners
    double background_cohesion = 0.9;
    double winner_cohesion = 0.1;
    double nonwinner_cohesion = 0.85;
    double cohesion_sd = 0.15;

    double winner_band_center = 0.65;
    double winner_band_halfwidth = 0.1;
    double nonwinner_cos_mean = 0.1;
    double nonwinner_cos_sd = 0.2;

    double missing_abstract_rate = 0.07;
    std::int32_t first_year = 1990;
    std::int32_t last_year = 2020;
};

struct SynthCorpus {
    std::vector<PaperRecord> records;
    EmbeddingStore embeddings;
};

SynthCorpus generate_synthetic(const SynthConfig& config);

} // namespace laurel
