#include "laurel/topo_features.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace laurel {

namespace {

/// Undirected simple view in CSR form.
struct UndirectedView {
    std::vector<std::size_t> offsets;
    std::vector<std::uint32_t> neighbors;

    std::span<const std::uint32_t> of(std::size_t v) const {
        return {neighbors.data() + offsets[v], neighbors.data() + offsets[v + 1]};
    }
};

UndirectedView undirected_view(std::size_t n, std::span<const LocalEdge> edges) {
    std::vector<LocalEdge> both;
    both.reserve(edges.size() * 2);
    for (const auto& [u, w] : edges) {
        both.emplace_back(u, w);
        both.emplace_back(w, u);
    }
    std::sort(both.begin(), both.end());
    both.erase(std::unique(both.begin(), both.end()), both.end());

    UndirectedView view;
    view.offsets.assign(n + 1, 0);
    view.neighbors.reserve(both.size());
    for (const auto& [u, w] : both) {
        ++view.offsets[u + 1];
        view.neighbors.push_back(w);
    }
    for (std::size_t i = 0; i < n; ++i)
        view.offsets[i + 1] += view.offsets[i];
    return view;
}

std::uint32_t undirected_diameter(const UndirectedView& view, std::size_t n) {
    constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> dist(n);
    std::vector<std::uint32_t> queue;
    queue.reserve(n);
    std::uint32_t diameter = 0;
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), kUnseen);
        queue.clear();
        dist[s] = 0;
        queue.push_back(static_cast<std::uint32_t>(s));
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const auto v = queue[head];
            for (auto w : view.of(v)) {
                if (dist[w] == kUnseen) {
                    dist[w] = dist[v] + 1;
                    diameter = std::max(diameter, dist[w]);
                    queue.push_back(w);
                }
            }
        }
    }
    return diameter;
}

} // namespace

TopoFeatures compute_topo_features(std::size_t node_count, std::span<const LocalEdge> edges) {
    TopoFeatures f;
    if (node_count <= 1)
        return f;
    const auto n = static_cast<double>(node_count);
    const auto m = static_cast<double>(edges.size());
    f.avg_out_degree = m / n;
    f.density = m / (n * (n - 1.0));

    const auto view = undirected_view(node_count, edges);
    f.diameter = undirected_diameter(view, node_count);

    // Per-node count of closed wedges (= triangles through the node).
    std::vector<std::uint8_t> marked(node_count, 0);
    double closed_total = 0.0;
    double wedge_total = 0.0;
    double local_sum = 0.0;
    for (std::size_t v = 0; v < node_count; ++v) {
        const auto nbrs = view.of(v);
        const double k = static_cast<double>(nbrs.size());
        if (nbrs.size() < 2)
            continue;
        for (auto u : nbrs)
            marked[u] = 1;
        std::uint64_t closed = 0;
        for (auto u : nbrs)
            for (auto w : view.of(u))
                if (w > u && marked[w])
                    ++closed;
        for (auto u : nbrs)
            marked[u] = 0;
        const double wedges = k * (k - 1.0) / 2.0;
        closed_total += static_cast<double>(closed);
        wedge_total += wedges;
        local_sum += static_cast<double>(closed) / wedges;
    }
    f.transitivity = wedge_total > 0.0 ? closed_total / wedge_total : 0.0;
    f.avg_local_clustering = local_sum / n;
    return f;
}

TopoFeatures compute_topo_features(const Subgraph& sub) {
    return compute_topo_features(sub.node_count(), sub.edges);
}

} // namespace laurel
