#include "laurel/corpus.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "json.hpp"
#include "laurel/errors.hpp"

namespace laurel {

using nlohmann::json;

namespace {

constexpr PaperId kHashedBit = PaperId{1} << 63;

PaperId fnv1a(std::string_view s) {
    PaperId h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

PaperId parse_id(const json& value) {
    if (value.is_number_unsigned()) {
        auto v = value.get<std::uint64_t>();
        if (v & kHashedBit)
            throw FormatError("integer id exceeds 63 bits");
        return v;
    }
    if (value.is_number_integer())
        throw FormatError("negative id");
    if (value.is_string())
        return intern_id(value.get_ref<const std::string&>());
    throw FormatError("id must be a string or an integer");
}

PaperRecord parse_record(const json& obj) {
    if (!obj.is_object())
        throw FormatError("line is not a JSON object");
    PaperRecord rec;
    rec.id = parse_id(obj.at("id"));
    rec.title = obj.at("title").get<std::string>();
    if (auto it = obj.find("abstract"); it != obj.end() && !it->is_null())
        rec.abstract = it->get<std::string>();
    const auto& year = obj.at("year");
    if (!year.is_number_integer())
        throw FormatError("year must be an integer");
    rec.year = year.get<int>();
    const auto& refs = obj.at("references");
    if (!refs.is_array())
        throw FormatError("references must be an array");
    std::unordered_set<PaperId> seen;
    for (const auto& r : refs) {
        PaperId ref = parse_id(r);
        if (ref == rec.id || !seen.insert(ref).second)
            continue;
        rec.references.push_back(ref);
    }
    if (auto it = obj.find("award"); it != obj.end() && !it->is_null()) {
        if (!it->is_boolean())
            throw FormatError("award must be a boolean");
        rec.award = it->get<bool>();
    }
    return rec;
}

} // namespace

PaperId intern_id(std::string_view external) {
    if (!external.empty() && external.size() <= 19) {
        PaperId value = 0;
        auto [ptr, ec] = std::from_chars(external.data(), external.data() + external.size(), value);
        if (ec == std::errc{} && ptr == external.data() + external.size() && !(value & kHashedBit))
            return value;
    }
    return fnv1a(external) | kHashedBit;
}

CorpusLoadResult parse_corpus(std::istream& in) {
    CorpusLoadResult result;
    std::unordered_set<PaperId> ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        PaperRecord rec;
        try {
            rec = parse_record(json::parse(line));
        } catch (const std::exception& e) {
            ++result.malformed_lines;
            result.warnings.push_back("line " + std::to_string(line_no) + ": " + e.what());
            continue;
        }
        if (!ids.insert(rec.id).second)
            throw CorpusError("duplicate paper id " + std::to_string(rec.id) + " at line " +
                              std::to_string(line_no));
        result.records.push_back(std::move(rec));
    }
    if (in.bad())
        throw IoError("read failure while parsing corpus");
    return result;
}

CorpusLoadResult load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open corpus " + path.string());
    return parse_corpus(in);
}

void write_corpus(std::ostream& out, std::span<const PaperRecord> records) {
    for (const auto& rec : records) {
        json obj = {{"id", rec.id}, {"title", rec.title}, {"year", rec.year}};
        if (rec.abstract)
            obj["abstract"] = *rec.abstract;
        obj["references"] = rec.references;
        obj["award"] = rec.award;
        out << obj.dump() << '\n';
    }
}

void save_corpus(const std::filesystem::path& path, std::span<const PaperRecord> records) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write corpus " + path.string());
    write_corpus(out, records);
    if (!out)
        throw IoError("write failure on " + path.string());
}

} // namespace laurel
