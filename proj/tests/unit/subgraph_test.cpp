#include <doctest.h>

#include <random>
#include <set>

#include "laurel/errors.hpp"
#include "laurel/subgraph.hpp"
#include "oracles.hpp"

using namespace laurel;
using Edges = std::vector<std::pair<NodeIndex, NodeIndex>>;

namespace {

std::set<NodeIndex> node_set(const Subgraph& s) {
    auto v = s.graph_nodes();
    return {v.begin(), v.end()};
}

std::set<oracle::Edge> edge_set(const Subgraph& s) {
    auto e = s.graph_edges();
    return {e.begin(), e.end()};
}

// Undirected BFS distances over local indices.
std::vector<int> undirected_distances(const Subgraph& s, std::uint32_t from) {
    std::vector<std::vector<std::uint32_t>> adj(s.node_count());
    for (auto [u, w] : s.edges) {
        adj[u].push_back(w);
        adj[w].push_back(u);
    }
    std::vector<int> d(s.node_count(), -1);
    std::vector<std::uint32_t> q{from};
    d[from] = 0;
    for (std::size_t h = 0; h < q.size(); ++h)
        for (auto w : adj[q[h]])
            if (d[w] < 0) {
                d[w] = d[q[h]] + 1;
                q.push_back(w);
            }
    return d;
}

}  // namespace

TEST_CASE("chain is truncated at delta") {
    // r=0 -> a=1 -> b=2 -> c=3
    auto g = CitationGraph::from_edges(4, Edges{{0, 1}, {1, 2}, {2, 3}});
    auto s = extract_subgraph(g, 0, 2);
    CHECK(node_set(s) == std::set<NodeIndex>{0, 1, 2});
    CHECK(edge_set(s) == std::set<oracle::Edge>{{0, 1}, {1, 2}});
    CHECK(s.nodes[0].vertex == 0);
    CHECK(s.nodes[0].distance == 0);
}

TEST_CASE("diamond keeps frontier edges out") {
    // r=0, a=1, b=2, x=3, y=4
    auto g = CitationGraph::from_edges(5, Edges{{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 2}, {3, 4}});
    auto s = extract_subgraph(g, 0, 2);
    CHECK(node_set(s) == std::set<NodeIndex>{0, 1, 2, 3});
    CHECK(edge_set(s) == std::set<oracle::Edge>{{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 2}});
}

TEST_CASE("walk rule drops frontier-to-frontier edges, induced keeps them") {
    // r -> a, r -> b, a -> b: at delta 1 both a and b are frontier nodes.
    auto g = CitationGraph::from_edges(3, Edges{{0, 1}, {0, 2}, {1, 2}});
    auto walk = extract_subgraph(g, 0, 1);
    auto induced = extract_subgraph(g, 0, 1, EdgeRule::Induced);
    CHECK(edge_set(walk) == std::set<oracle::Edge>{{0, 1}, {0, 2}});
    CHECK(edge_set(induced) == std::set<oracle::Edge>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("delta zero is the root alone") {
    auto g = CitationGraph::from_edges(2, Edges{{0, 1}});
    auto s = extract_subgraph(g, 0, 0);
    CHECK(s.node_count() == 1);
    CHECK(s.edge_count() == 0);
}

TEST_CASE("invalid root and negative delta are errors") {
    auto g = CitationGraph::from_edges(2, Edges{{0, 1}});
    CHECK_THROWS_AS(extract_subgraph(g, 2, 1), Error);
    CHECK_THROWS_AS(extract_subgraph(g, 0, -1), Error);
}

TEST_CASE("virtual root cites its references") {
    auto g = CitationGraph::from_edges(3, Edges{{0, 1}, {1, 2}});
    SubgraphExtractor ex(g);
    std::vector<NodeIndex> refs{0};
    auto s = ex.extract_virtual(refs, 2);
    REQUIRE(s.node_count() == 3);
    CHECK(s.nodes[0].vertex == kNoNode);
    CHECK(s.nodes[1].vertex == 0);
    CHECK(s.nodes[2].vertex == 1);
    CHECK(s.edges == std::vector<LocalEdge>{{0, 1}, {1, 2}});
}

TEST_CASE("random graphs match the walk enumeration oracle") {
    std::mt19937_64 rng(2024);
    int mismatches = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const NodeIndex n = 20 + NodeIndex(rng() % 120);
        auto g = oracle::random_graph(rng, n, 0.05);
        SubgraphExtractor ex(g);
        for (int delta = 1; delta <= 3; ++delta) {
            const NodeIndex root = NodeIndex(rng() % n);
            auto s = ex.extract(root, delta);
            auto o = oracle::enumerate_walks(g, root, delta);
            if (node_set(s) != o.nodes || edge_set(s) != o.edges)
                ++mismatches;
        }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("subgraph structure invariants") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const NodeIndex n = 30 + NodeIndex(rng() % 100);
        auto g = oracle::random_graph(rng, n, 0.06);
        const int delta = 1 + int(rng() % 3);
        const NodeIndex root = NodeIndex(rng() % n);
        for (auto rule : {EdgeRule::Walk, EdgeRule::Induced}) {
            auto s = extract_subgraph(g, root, delta, rule);
            // BFS order and distance bound.
            bool ordered = s.nodes[0].vertex == root && s.nodes[0].distance == 0;
            for (std::size_t i = 1; i < s.node_count(); ++i)
                ordered = ordered && s.nodes[i - 1].distance <= s.nodes[i].distance &&
                          s.nodes[i].distance <= std::uint32_t(delta);
            CHECK(ordered);
            CHECK(std::is_sorted(s.edges.begin(), s.edges.end()));
            // Weak connectivity and undirected diameter bound.
            auto d0 = undirected_distances(s, 0);
            CHECK(std::none_of(d0.begin(), d0.end(), [](int x) { return x < 0; }));
            int diam = 0;
            for (std::uint32_t v = 0; v < s.node_count(); ++v) {
                auto dv = undirected_distances(s, v);
                diam = std::max(diam, *std::max_element(dv.begin(), dv.end()));
            }
            CHECK(diam <= 2 * delta);
        }
    }
}
