#include "laurel/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "binary_io.hpp"
#include "json.hpp"
#include "laurel/corpus.hpp"
#include "laurel/errors.hpp"

namespace laurel {

using detail::read_le;
using detail::write_le;

EmbeddingStore::EmbeddingStore(std::uint32_t dim) : dim_(dim) {}

void EmbeddingStore::add(PaperId id, std::span<const float> vector) {
    const std::string who = "embedding record for paper " + std::to_string(id);
    if (dim_ == 0)
        throw FormatError("embedding dimension must be positive");
    if (vector.size() != dim_)
        throw FormatError(who + ": dimension " + std::to_string(vector.size()) +
                          " != " + std::to_string(dim_));
    if (std::all_of(vector.begin(), vector.end(), [](float x) { return x == 0.0f; }))
        throw FormatError(who + " is the zero vector");
    if (std::any_of(vector.begin(), vector.end(), [](float x) { return !std::isfinite(x); }))
        throw FormatError(who + " has non-finite components");
    if (!index_.emplace(id, ids_.size()).second)
        throw FormatError(who + " is duplicated");
    ids_.push_back(id);
    data_.insert(data_.end(), vector.begin(), vector.end());
}

std::optional<std::span<const float>> EmbeddingStore::find(PaperId id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        return std::nullopt;
    return vector(it->second);
}

void EmbeddingStore::write(std::ostream& out) const {
    out.write("EMB1", 4);
    write_le<std::uint32_t>(out, dim_);
    write_le<std::uint64_t>(out, ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        write_le<std::uint64_t>(out, ids_[i]);
        for (float x : vector(i))
            write_le<float>(out, x);
    }
}

EmbeddingStore EmbeddingStore::read(std::istream& in) {
    detail::expect_magic(in, "EMB1");
    const auto dim = read_le<std::uint32_t>(in, "dimension");
    const auto count = read_le<std::uint64_t>(in, "record count");
    EmbeddingStore store(dim);
    std::vector<float> buf(dim);
    for (std::uint64_t r = 0; r < count; ++r) {
        const std::string where = "record " + std::to_string(r);
        const auto id = read_le<std::uint64_t>(in, where.c_str());
        for (auto& x : buf)
            x = read_le<float>(in, where.c_str());
        store.add(id, buf);
    }
    if (in.peek() != std::char_traits<char>::eof())
        throw FormatError("trailing bytes after " + std::to_string(count) + " records");
    return store;
}

void EmbeddingStore::write_jsonl(std::ostream& out) const {
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        auto v = vector(i);
        nlohmann::json obj = {{"id", ids_[i]}, {"vec", std::vector<float>(v.begin(), v.end())}};
        out << obj.dump() << '\n';
    }
}

EmbeddingStore EmbeddingStore::read_jsonl(std::istream& in) {
    EmbeddingStore store(0);
    std::string line;
    std::size_t line_no = 0;
    std::vector<float> buf;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        PaperId id = 0;
        try {
            auto obj = nlohmann::json::parse(line);
            const auto& jid = obj.at("id");
            id = jid.is_string() ? intern_id(jid.get_ref<const std::string&>())
                                 : jid.get<std::uint64_t>();
            buf = obj.at("vec").get<std::vector<float>>();
        } catch (const nlohmann::json::exception& e) {
            throw FormatError("embedding line " + std::to_string(line_no) + ": " + e.what());
        }
        if (store.dim_ == 0)
            store.dim_ = static_cast<std::uint32_t>(buf.size());
        store.add(id, buf);
    }
    if (store.dim_ == 0)
        throw FormatError("embedding file has no records");
    return store;
}

void EmbeddingStore::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write embeddings " + path.string());
    write(out);
    if (!out)
        throw IoError("write failure on " + path.string());
}

EmbeddingStore EmbeddingStore::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open embeddings " + path.string());
    char magic[4] = {};
    in.read(magic, 4);
    const bool binary = in.gcount() == 4 && std::string_view(magic, 4) == "EMB1";
    in.clear();
    in.seekg(0);
    return binary ? read(in) : read_jsonl(in);
}

} // namespace laurel
