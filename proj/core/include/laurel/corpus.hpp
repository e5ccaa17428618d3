#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "laurel/types.hpp"

namespace laurel {

/// One corpus entry. `references` is deduplicated and never contains `id`.
struct PaperRecord {
    PaperId id = 0;
    std::string title;
    std::optional<std::string> abstract;
    int year = 0;
    std::vector<PaperId> references;
    bool award = false;
};

struct CorpusLoadResult {
    std::vector<PaperRecord> records;
    std::size_t malformed_lines = 0;
    /// One message per skipped line, "line N: reason".
    std::vector<std::string> warnings;
};

/// Maps an external id string to a PaperId. Decimal strings that fit in 63 bits
/// map to their value; anything else maps to its 64-bit FNV-1a hash with the
/// top bit set, so the two ranges never collide.
PaperId intern_id(std::string_view external);

/// Reads a JSON-lines corpus. Malformed lines are skipped and counted; a
/// duplicate id throws CorpusError; an unreadable file throws IoError.
CorpusLoadResult load_corpus(const std::filesystem::path& path);
CorpusLoadResult parse_corpus(std::istream& in);

/// Writes records in the corpus format (integer ids).
void write_corpus(std::ostream& out, std::span<const PaperRecord> records);
void save_corpus(const std::filesystem::path& path, std::span<const PaperRecord> records);

} // namespace laurel
