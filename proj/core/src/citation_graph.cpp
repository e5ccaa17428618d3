#include "laurel/citation_graph.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include "binary_io.hpp"
#include "laurel/errors.hpp"

namespace laurel {

using detail::read_le;
using detail::write_le;

namespace {

void fill_csr(NodeIndex n, std::vector<std::pair<NodeIndex, NodeIndex>>& edges,
              std::vector<std::uint64_t>& offsets, std::vector<NodeIndex>& neighbors) {
    std::sort(edges.begin(), edges.end());
    offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    neighbors.clear();
    neighbors.reserve(edges.size());
    for (const auto& [u, v] : edges) {
        ++offsets[u + 1];
        neighbors.push_back(v);
    }
    for (std::size_t i = 0; i < n; ++i)
        offsets[i + 1] += offsets[i];
}

} // namespace

CitationGraph CitationGraph::from_edges(NodeIndex node_count,
                                        std::span<const std::pair<NodeIndex, NodeIndex>> edges,
                                        std::vector<std::uint8_t> labels,
                                        std::vector<std::int32_t> years,
                                        std::vector<PaperId> ids) {
    if (node_count == kNoNode)
        throw CorpusError("graph too large for 32-bit node indices");
    CitationGraph g;
    std::vector<std::pair<NodeIndex, NodeIndex>> fwd;
    fwd.reserve(edges.size());
    for (const auto& [u, v] : edges) {
        if (u >= node_count || v >= node_count)
            throw CorpusError("edge endpoint out of range");
        if (u != v)
            fwd.emplace_back(u, v);
    }
    std::sort(fwd.begin(), fwd.end());
    fwd.erase(std::unique(fwd.begin(), fwd.end()), fwd.end());

    std::vector<std::pair<NodeIndex, NodeIndex>> rev;
    rev.reserve(fwd.size());
    for (const auto& [u, v] : fwd)
        rev.emplace_back(v, u);
    fill_csr(node_count, fwd, g.offsets_, g.neighbors_);
    fill_csr(node_count, rev, g.rev_offsets_, g.rev_neighbors_);

    labels.resize(node_count, 0);
    years.resize(node_count, 0);
    if (ids.empty()) {
        ids.resize(node_count);
        for (NodeIndex i = 0; i < node_count; ++i)
            ids[i] = i;
    }
    if (ids.size() != node_count)
        throw CorpusError("id table size does not match node count");
    g.labels_ = std::move(labels);
    g.years_ = std::move(years);
    g.ids_ = std::move(ids);
    g.build_index();
    return g;
}

void CitationGraph::build_index() {
    index_.clear();
    index_.reserve(ids_.size());
    for (NodeIndex i = 0; i < ids_.size(); ++i) {
        if (!index_.emplace(ids_[i], i).second)
            throw CorpusError("duplicate paper id " + std::to_string(ids_[i]));
    }
}

std::optional<NodeIndex> CitationGraph::find(PaperId id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::vector<NodeIndex> CitationGraph::winners() const {
    std::vector<NodeIndex> out;
    for (NodeIndex v = 0; v < node_count(); ++v)
        if (labels_[v])
            out.push_back(v);
    return out;
}

void CitationGraph::write(std::ostream& out) const {
    const std::uint64_t n = node_count();
    const std::uint64_t m = edge_count();
    out.write("CGR1", 4);
    write_le<std::uint64_t>(out, n);
    write_le<std::uint64_t>(out, m);
    for (auto o : offsets_)
        write_le(out, o);
    for (auto v : neighbors_)
        write_le(out, v);
    for (auto o : rev_offsets_)
        write_le(out, o);
    for (auto v : rev_neighbors_)
        write_le(out, v);
    std::vector<std::uint8_t> bits((n + 7) / 8, 0);
    for (std::uint64_t i = 0; i < n; ++i)
        if (labels_[i])
            bits[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
    out.write(reinterpret_cast<const char*>(bits.data()), static_cast<std::streamsize>(bits.size()));
    for (auto y : years_)
        write_le(out, y);
    for (auto id : ids_)
        write_le(out, id);
}

CitationGraph CitationGraph::read(std::istream& in) {
    detail::expect_magic(in, "CGR1");
    const auto n = read_le<std::uint64_t>(in, "node count");
    const auto m = read_le<std::uint64_t>(in, "edge count");
    if (n >= kNoNode)
        throw FormatError("node count exceeds 32-bit index range");
    CitationGraph g;
    auto read_csr = [&](std::vector<std::uint64_t>& offsets, std::vector<NodeIndex>& nbrs) {
        offsets.resize(n + 1);
        for (auto& o : offsets)
            o = read_le<std::uint64_t>(in, "offset array");
        if (offsets.front() != 0 || offsets.back() != m ||
            !std::is_sorted(offsets.begin(), offsets.end()))
            throw FormatError("inconsistent offset array");
        nbrs.resize(m);
        for (auto& v : nbrs) {
            v = read_le<NodeIndex>(in, "neighbor array");
            if (v >= n)
                throw FormatError("neighbor index out of range");
        }
    };
    read_csr(g.offsets_, g.neighbors_);
    read_csr(g.rev_offsets_, g.rev_neighbors_);
    std::vector<std::uint8_t> bits((n + 7) / 8);
    if (!in.read(reinterpret_cast<char*>(bits.data()), static_cast<std::streamsize>(bits.size())))
        throw FormatError("truncated file while reading label bitset");
    g.labels_.resize(n);
    for (std::uint64_t i = 0; i < n; ++i)
        g.labels_[i] = (bits[i / 8] >> (i % 8)) & 1u;
    g.years_.resize(n);
    for (auto& y : g.years_)
        y = read_le<std::int32_t>(in, "year array");
    g.ids_.resize(n);
    for (auto& id : g.ids_)
        id = read_le<PaperId>(in, "id table");
    g.build_index();
    return g;
}

void CitationGraph::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write graph snapshot " + path.string());
    write(out);
    if (!out)
        throw IoError("write failure on " + path.string());
}

CitationGraph CitationGraph::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open graph snapshot " + path.string());
    return read(in);
}

CitationGraph build_graph(std::span<const PaperRecord> records, BuildReport* report) {
    if (records.empty())
        throw CorpusError("cannot build a graph from an empty corpus");
    if (records.size() >= kNoNode)
        throw CorpusError("corpus too large for 32-bit node indices");
    const auto n = static_cast<NodeIndex>(records.size());

    std::unordered_map<PaperId, NodeIndex> index;
    index.reserve(n);
    for (NodeIndex i = 0; i < n; ++i)
        if (!index.emplace(records[i].id, i).second)
            throw CorpusError("duplicate paper id " + std::to_string(records[i].id));

    std::vector<std::pair<NodeIndex, NodeIndex>> edges;
    std::vector<std::uint8_t> labels(n);
    std::vector<std::int32_t> years(n);
    std::vector<PaperId> ids(n);
    std::size_t dangling = 0;
    for (NodeIndex i = 0; i < n; ++i) {
        const auto& rec = records[i];
        labels[i] = rec.award ? 1 : 0;
        years[i] = rec.year;
        ids[i] = rec.id;
        for (PaperId ref : rec.references) {
            auto it = index.find(ref);
            if (it == index.end())
                ++dangling;
            else
                edges.emplace_back(i, it->second);
        }
    }
    if (report)
        report->dangling_references = dangling;
    return CitationGraph::from_edges(n, edges, std::move(labels), std::move(years), std::move(ids));
}

} // namespace laurel
