#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "laurel/citation_graph.hpp"

namespace laurel {

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/**
 * Distance of every node to its closest award winner, following citation
 * edges from the node toward the winner. Winners sit at distance 0 and are
 * not members of any stratum; every non-winner is in exactly one stratum,
 * with kUnreachable as the key of the "no path" stratum.
 */
struct DistanceStrata {
    std::vector<std::uint32_t> distance;
    std::map<std::uint32_t, std::vector<NodeIndex>> strata;

    std::size_t node_count() const { return distance.size(); }
    std::size_t stratum_size(std::uint32_t a) const;

    /// Unnormalized sampling weight 1/|S_a| of a non-winner; 0 for winners.
    double sampling_weight(NodeIndex v) const;
};

/// Multi-source BFS on the reverse graph seeded at every winner.
DistanceStrata distances_to_winners(const CitationGraph& graph);

/**
 * Every winner plus (target_n - |winners|) distinct non-winners. A non-winner
 * in S_a is included with probability proportional to 1/|S_a|, so each
 * distance stratum contributes equally in expectation (capped at the stratum
 * size, with the excess spread over the remaining strata). Deterministic in
 * `seed`. The result is sorted.
 */
std::vector<NodeIndex> stratified_sample(const DistanceStrata& strata,
                                         std::span<const NodeIndex> winners,
                                         std::size_t target_n, std::uint64_t seed);

} // namespace laurel
