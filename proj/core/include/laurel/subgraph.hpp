#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "laurel/citation_graph.hpp"

namespace laurel {

/// Which edges accompany the Δ-ball node set.
enum class EdgeRule {
    /// Edges on some walk of length <= Δ from the root: d(root,u) <= Δ-1.
    Walk,
    /// Every graph edge between two ball nodes.
    Induced,
};

struct SubgraphNode {
    NodeIndex vertex;        ///< graph index, kNoNode for a virtual root
    std::uint32_t distance;  ///< directed BFS distance from the root
};

using LocalEdge = std::pair<std::uint32_t, std::uint32_t>;

/**
 * Rooted Δ-bounded subgraph G_i(Δ).
 *
 * Nodes are stored in BFS order, so local index 0 is the root and distances
 * are non-decreasing. Edges refer to local indices and are sorted.
 */
struct Subgraph {
    NodeIndex root = kNoNode;
    int delta = 0;
    std::vector<SubgraphNode> nodes;
    std::vector<LocalEdge> edges;

    std::size_t node_count() const { return nodes.size(); }
    std::size_t edge_count() const { return edges.size(); }

    /// Edges translated back to graph indices.
    std::vector<std::pair<NodeIndex, NodeIndex>> graph_edges() const;
    std::vector<NodeIndex> graph_nodes() const;
};

/**
 * Reusable BFS state for repeated extraction on one graph. Each worker thread
 * owns its own extractor; the graph itself is shared read-only.
 */
class SubgraphExtractor {
public:
    explicit SubgraphExtractor(const CitationGraph& graph);

    Subgraph extract(NodeIndex root, int delta, EdgeRule rule = EdgeRule::Walk);

    /// Subgraph of a paper that is not in the graph: a virtual root citing
    /// `references`. The virtual root has vertex kNoNode.
    Subgraph extract_virtual(std::span<const NodeIndex> references, int delta,
                             EdgeRule rule = EdgeRule::Walk);

private:
    Subgraph run(NodeIndex root, std::span<const NodeIndex> seeds, int delta, EdgeRule rule);

    const CitationGraph* graph_;
    std::vector<std::uint32_t> local_;  // graph index -> local index, or kUnset
};

Subgraph extract_subgraph(const CitationGraph& graph, NodeIndex root, int delta,
                          EdgeRule rule = EdgeRule::Walk);

} // namespace laurel
