#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "laurel/subgraph.hpp"

namespace laurel {

/// Five topological features of a rooted subgraph. Diameter, transitivity and
/// clustering are measured on the undirected simple view.
struct TopoFeatures {
    double avg_out_degree = 0.0;
    std::uint32_t diameter = 0;
    double density = 0.0;
    double transitivity = 0.0;
    double avg_local_clustering = 0.0;

    static constexpr std::size_t kCount = 5;
    static constexpr std::array<std::string_view, kCount> kNames = {
        "avg_out_degree", "diameter", "density", "transitivity", "avg_local_clustering"};

    std::array<double, kCount> as_array() const {
        return {avg_out_degree, static_cast<double>(diameter), density, transitivity,
                avg_local_clustering};
    }

    bool operator==(const TopoFeatures&) const = default;
};

TopoFeatures compute_topo_features(const Subgraph& sub);

/// Same computation on a bare directed edge list over nodes 0..node_count-1.
/// The edge list must be simple (no self-loops, no duplicates).
TopoFeatures compute_topo_features(std::size_t node_count, std::span<const LocalEdge> edges);

} // namespace laurel
