#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "laurel/corpus.hpp"
#include "laurel/types.hpp"

namespace laurel {

struct BuildReport {
    std::size_t dangling_references = 0;
};

/**
 * Immutable directed citation graph in compressed sparse row form.
 *
 * An edge u -> v means paper u cites paper v. Both the forward and the reverse
 * adjacency are stored with sorted neighbor lists. The graph is simple: no
 * self-loops, no parallel edges. Safe for any number of concurrent readers.
 */
class CitationGraph {
public:
    CitationGraph() = default;

    /// Builds from an explicit edge list. Self-loops and duplicates are dropped.
    /// `labels`, `years` and `ids` may be empty (defaults: false, 0, index).
    static CitationGraph from_edges(NodeIndex node_count,
                                    std::span<const std::pair<NodeIndex, NodeIndex>> edges,
                                    std::vector<std::uint8_t> labels = {},
                                    std::vector<std::int32_t> years = {},
                                    std::vector<PaperId> ids = {});

    NodeIndex node_count() const { return static_cast<NodeIndex>(years_.size()); }
    std::uint64_t edge_count() const { return neighbors_.size(); }

    std::span<const NodeIndex> out_neighbors(NodeIndex v) const {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    std::span<const NodeIndex> in_neighbors(NodeIndex v) const {
        return {rev_neighbors_.data() + rev_offsets_[v],
                rev_neighbors_.data() + rev_offsets_[v + 1]};
    }
    std::size_t out_degree(NodeIndex v) const { return offsets_[v + 1] - offsets_[v]; }
    std::size_t in_degree(NodeIndex v) const { return rev_offsets_[v + 1] - rev_offsets_[v]; }

    bool is_winner(NodeIndex v) const { return labels_[v] != 0; }
    std::int32_t year(NodeIndex v) const { return years_[v]; }
    PaperId paper_id(NodeIndex v) const { return ids_[v]; }
    std::optional<NodeIndex> find(PaperId id) const;

    std::vector<NodeIndex> winners() const;

    std::span<const std::uint64_t> offsets() const { return offsets_; }
    std::span<const NodeIndex> neighbors() const { return neighbors_; }
    std::span<const std::uint64_t> reverse_offsets() const { return rev_offsets_; }
    std::span<const NodeIndex> reverse_neighbors() const { return rev_neighbors_; }

    /// Binary snapshot, magic "CGR1", little-endian.
    void write(std::ostream& out) const;
    static CitationGraph read(std::istream& in);
    void save(const std::filesystem::path& path) const;
    static CitationGraph load(const std::filesystem::path& path);

private:
    void build_index();

    std::vector<std::uint64_t> offsets_{0};
    std::vector<NodeIndex> neighbors_;
    std::vector<std::uint64_t> rev_offsets_{0};
    std::vector<NodeIndex> rev_neighbors_;
    std::vector<std::uint8_t> labels_;
    std::vector<std::int32_t> years_;
    std::vector<PaperId> ids_;
    std::unordered_map<PaperId, NodeIndex> index_;
};

/// Dense indices follow record order. References to ids outside the corpus are
/// dropped and counted in `report`.
CitationGraph build_graph(std::span<const PaperRecord> records, BuildReport* report = nullptr);

} // namespace laurel
