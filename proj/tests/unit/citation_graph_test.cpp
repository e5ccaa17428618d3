#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "laurel/citation_graph.hpp"
#include "laurel/errors.hpp"

using namespace laurel;

TEST_CASE("two-node graph has the reverse edge") {
    std::vector<PaperRecord> recs(2);
    recs[0].id = 100;
    recs[0].references = {200};
    recs[1].id = 200;
    BuildReport rep;
    auto g = build_graph(recs, &rep);
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    REQUIRE(g.in_neighbors(1).size() == 1);
    CHECK(g.in_neighbors(1)[0] == 0);
    CHECK(rep.dangling_references == 0);
    CHECK(g.find(200) == std::optional<NodeIndex>(1));
    CHECK_FALSE(g.find(300).has_value());
}

TEST_CASE("reference to an unknown id is dropped and counted") {
    std::vector<PaperRecord> recs(1);
    recs[0].id = 1;
    recs[0].references = {999};
    BuildReport rep;
    auto g = build_graph(recs, &rep);
    CHECK(g.edge_count() == 0);
    CHECK(rep.dangling_references == 1);
}

TEST_CASE("empty record list is an error") {
    CHECK_THROWS_AS(build_graph({}), Error);
}

TEST_CASE("from_edges drops self loops and duplicates") {
    std::vector<std::pair<NodeIndex, NodeIndex>> e{{0, 1}, {0, 1}, {1, 1}, {1, 2}};
    auto g = CitationGraph::from_edges(3, e);
    CHECK(g.edge_count() == 2);
}

TEST_CASE("transpose recount on 10000 random records") {
    std::mt19937_64 rng(11);
    const std::size_t n = 10000;
    std::vector<PaperRecord> recs(n);
    std::uniform_int_distribution<std::size_t> pick(0, n + 500);  // some dangling
    std::uniform_int_distribution<int> deg(0, 15);
    for (std::size_t i = 0; i < n; ++i) {
        recs[i].id = 1000 + i;
        const int d = deg(rng);
        std::vector<PaperId> refs;
        for (int k = 0; k < d; ++k) {
            const PaperId r = 1000 + pick(rng);
            if (r != recs[i].id && std::find(refs.begin(), refs.end(), r) == refs.end())
                refs.push_back(r);
        }
        recs[i].references = refs;
        recs[i].award = rng() % 10 == 0;
    }
    BuildReport rep;
    auto g = build_graph(recs, &rep);

    // Independent recount from the records.
    std::uint64_t expected = 0, dangling = 0;
    std::vector<std::uint64_t> in_count(n, 0);
    for (const auto& r : recs)
        for (auto ref : r.references) {
            if (ref - 1000 < n) {
                ++expected;
                ++in_count[ref - 1000];
            } else {
                ++dangling;
            }
        }
    CHECK(g.edge_count() == expected);
    CHECK(rep.dangling_references == dangling);

    std::uint64_t out_sum = 0, in_sum = 0;
    bool in_match = true, sorted = true, transposed = true;
    for (NodeIndex v = 0; v < n; ++v) {
        out_sum += g.out_degree(v);
        in_sum += g.in_degree(v);
        in_match = in_match && g.in_degree(v) == in_count[v];
        auto out = g.out_neighbors(v);
        sorted = sorted && std::is_sorted(out.begin(), out.end());
        for (auto w : out) {
            auto in = g.in_neighbors(w);
            transposed = transposed && std::binary_search(in.begin(), in.end(), v);
        }
    }
    CHECK(out_sum == expected);
    CHECK(in_sum == expected);
    CHECK(in_match);
    CHECK(sorted);
    CHECK(transposed);
    CHECK(g.reverse_neighbors().size() == g.neighbors().size());
}

TEST_CASE("snapshot roundtrip is exact") {
    std::mt19937_64 rng(3);
    std::vector<PaperRecord> recs(300);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        recs[i].id = (i % 2) ? i : (PaperId{1} << 63) | (rng() >> 1);
        recs[i].year = 1980 + int(i % 40);
        recs[i].award = i % 7 == 0;
    }
    for (std::size_t i = 0; i < recs.size(); ++i)
        for (int k = 0; k < 4; ++k) {
            auto t = recs[rng() % recs.size()].id;
            if (t != recs[i].id &&
                std::find(recs[i].references.begin(), recs[i].references.end(), t) ==
                    recs[i].references.end())
                recs[i].references.push_back(t);
        }
    auto g = build_graph(recs);
    std::stringstream buf;
    g.write(buf);
    const auto bytes = buf.str();
    CHECK(bytes.substr(0, 4) == "CGR1");
    auto h = CitationGraph::read(buf);
    CHECK(h.node_count() == g.node_count());
    CHECK(std::ranges::equal(h.offsets(), g.offsets()));
    CHECK(std::ranges::equal(h.neighbors(), g.neighbors()));
    CHECK(std::ranges::equal(h.reverse_offsets(), g.reverse_offsets()));
    CHECK(std::ranges::equal(h.reverse_neighbors(), g.reverse_neighbors()));
    bool same = true;
    for (NodeIndex v = 0; v < g.node_count(); ++v)
        same = same && h.is_winner(v) == g.is_winner(v) && h.year(v) == g.year(v) &&
               h.paper_id(v) == g.paper_id(v) && h.find(g.paper_id(v)) == v;
    CHECK(same);

    std::stringstream again;
    h.write(again);
    CHECK(again.str() == bytes);
}

TEST_CASE("snapshot with wrong magic or truncation is rejected") {
    std::istringstream bad("XXXX0000");
    CHECK_THROWS_AS(CitationGraph::read(bad), FormatError);

    auto g = CitationGraph::from_edges(3, std::vector<std::pair<NodeIndex, NodeIndex>>{{0, 1}});
    std::stringstream buf;
    g.write(buf);
    auto bytes = buf.str();
    std::istringstream cut(bytes.substr(0, bytes.size() - 3));
    CHECK_THROWS_AS(CitationGraph::read(cut), FormatError);
}
