#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "laurel/types.hpp"

namespace laurel {

/**
 * Fixed-dimension sentence embeddings keyed by paper id.
 *
 * Vectors are stored contiguously as 32-bit floats in insertion order. Every
 * vector has dimension dim() and at least one nonzero component.
 */
class EmbeddingStore {
public:
    explicit EmbeddingStore(std::uint32_t dim = 0);

    std::uint32_t dim() const { return dim_; }
    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }

    /// Throws FormatError on dimension mismatch, zero vector or duplicate id.
    void add(PaperId id, std::span<const float> vector);

    PaperId id(std::size_t i) const { return ids_[i]; }
    std::span<const float> vector(std::size_t i) const {
        return {data_.data() + i * dim_, dim_};
    }
    std::optional<std::span<const float>> find(PaperId id) const;
    bool contains(PaperId id) const { return index_.contains(id); }

    /// Binary "EMB1" format.
    void write(std::ostream& out) const;
    static EmbeddingStore read(std::istream& in);
    /// JSON lines, {"id": ..., "vec": [...]} per line.
    void write_jsonl(std::ostream& out) const;
    static EmbeddingStore read_jsonl(std::istream& in);

    void save(const std::filesystem::path& path) const;
    /// Detects the format from the first four bytes.
    static EmbeddingStore load(const std::filesystem::path& path);

private:
    std::uint32_t dim_;
    std::vector<PaperId> ids_;
    std::vector<float> data_;
    std::unordered_map<PaperId, std::size_t> index_;
};

} // namespace laurel
