#include "laurel/subgraph.hpp"

#include <algorithm>

#include "laurel/errors.hpp"

namespace laurel {

namespace {
constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
}

std::vector<std::pair<NodeIndex, NodeIndex>> Subgraph::graph_edges() const {
    std::vector<std::pair<NodeIndex, NodeIndex>> out;
    out.reserve(edges.size());
    for (const auto& [u, w] : edges)
        out.emplace_back(nodes[u].vertex, nodes[w].vertex);
    return out;
}

std::vector<NodeIndex> Subgraph::graph_nodes() const {
    std::vector<NodeIndex> out;
    out.reserve(nodes.size());
    for (const auto& node : nodes)
        out.push_back(node.vertex);
    return out;
}

SubgraphExtractor::SubgraphExtractor(const CitationGraph& graph)
    : graph_(&graph), local_(graph.node_count(), kUnset) {}

Subgraph SubgraphExtractor::extract(NodeIndex root, int delta, EdgeRule rule) {
    if (root >= graph_->node_count())
        throw Error("invalid root index " + std::to_string(root));
    return run(root, {}, delta, rule);
}

Subgraph SubgraphExtractor::extract_virtual(std::span<const NodeIndex> references, int delta,
                                            EdgeRule rule) {
    for (NodeIndex r : references)
        if (r >= graph_->node_count())
            throw Error("invalid reference index " + std::to_string(r));
    return run(kNoNode, references, delta, rule);
}

Subgraph SubgraphExtractor::run(NodeIndex root, std::span<const NodeIndex> seeds, int delta,
                                EdgeRule rule) {
    if (delta < 0)
        throw Error("delta must be non-negative");
    const auto limit = static_cast<std::uint32_t>(delta);

    Subgraph sub;
    sub.root = root;
    sub.delta = delta;
    sub.nodes.push_back({root, 0});
    if (root != kNoNode)
        local_[root] = 0;

    auto visit = [&](NodeIndex v, std::uint32_t dist) {
        if (local_[v] != kUnset)
            return;
        local_[v] = static_cast<std::uint32_t>(sub.nodes.size());
        sub.nodes.push_back({v, dist});
    };

    std::vector<NodeIndex> root_targets;
    if (root == kNoNode && limit >= 1) {
        for (NodeIndex s : seeds)
            visit(s, 1);
        for (std::size_t i = 1; i < sub.nodes.size(); ++i)
            root_targets.push_back(sub.nodes[i].vertex);
    }

    // BFS over the node list itself; it doubles as the queue.
    for (std::size_t head = (root == kNoNode ? 1 : 0); head < sub.nodes.size(); ++head) {
        const auto [v, dist] = sub.nodes[head];
        if (dist >= limit)
            continue;
        for (NodeIndex w : graph_->out_neighbors(v))
            visit(w, dist + 1);
    }

    for (NodeIndex t : root_targets)
        sub.edges.emplace_back(0u, local_[t]);
    const std::size_t first_real = root == kNoNode ? 1 : 0;
    for (std::size_t i = first_real; i < sub.nodes.size(); ++i) {
        const auto [v, dist] = sub.nodes[i];
        if (rule == EdgeRule::Walk && dist >= limit)
            continue;
        for (NodeIndex w : graph_->out_neighbors(v)) {
            const auto lw = local_[w];
            if (lw != kUnset)
                sub.edges.emplace_back(static_cast<std::uint32_t>(i), lw);
        }
    }
    std::sort(sub.edges.begin(), sub.edges.end());

    for (std::size_t i = first_real; i < sub.nodes.size(); ++i)
        local_[sub.nodes[i].vertex] = kUnset;
    return sub;
}

Subgraph extract_subgraph(const CitationGraph& graph, NodeIndex root, int delta, EdgeRule rule) {
    SubgraphExtractor extractor(graph);
    return extractor.extract(root, delta, rule);
}

} // namespace laurel
