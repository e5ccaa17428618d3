#include <doctest.h>

#include <cstring>
#include <fstream>
#include <algorithm>
#include <random>
#include <sstream>

#include "laurel/embeddings.hpp"
#include "laurel/errors.hpp"
#include "temp_dir.hpp"

using namespace laurel;

TEST_CASE("two records of dimension four roundtrip") {
    EmbeddingStore s(4);
    std::vector<float> a{1, 2, 3, 4}, b{0, 0, 0, -1};
    s.add(7, a);
    s.add(9, b);
    std::stringstream buf;
    s.write(buf);
    auto r = EmbeddingStore::read(buf);
    CHECK(r.dim() == 4);
    CHECK(r.size() == 2);
    REQUIRE(r.find(9).has_value());
    CHECK(std::ranges::equal(*r.find(9), b));
    CHECK_FALSE(r.find(8).has_value());
}

TEST_CASE("truncated record is rejected") {
    EmbeddingStore s(4);
    std::vector<float> a{1, 2, 3, 4};
    s.add(1, a);
    std::stringstream buf;
    s.write(buf);
    auto bytes = buf.str();
    std::istringstream cut(bytes.substr(0, bytes.size() - sizeof(float)));
    CHECK_THROWS_AS(EmbeddingStore::read(cut), FormatError);
}

TEST_CASE("bad magic is rejected") {
    std::istringstream in("EMB2\x04\0\0\0");
    CHECK_THROWS_AS(EmbeddingStore::read(in), FormatError);
}

TEST_CASE("zero vector, wrong dimension and duplicate id are rejected") {
    EmbeddingStore s(3);
    std::vector<float> zero{0, 0, 0}, two{1, 2}, ok{1, 0, 0};
    CHECK_THROWS_AS(s.add(1, zero), FormatError);
    CHECK_THROWS_AS(s.add(1, two), FormatError);
    s.add(1, ok);
    CHECK_THROWS_AS(s.add(1, ok), FormatError);
}

TEST_CASE("zero vector inside a file names the record") {
    // Hand-built file: dim 2, one record id 5 with a zero vector.
    std::string bytes = "EMB1";
    auto put = [&](const void* p, std::size_t n) { bytes.append(static_cast<const char*>(p), n); };
    std::uint32_t dim = 2;
    std::uint64_t count = 1, id = 5;
    float v[2] = {0.0f, 0.0f};
    put(&dim, 4);
    put(&count, 8);
    put(&id, 8);
    put(v, 8);
    std::istringstream in(bytes);
    try {
        EmbeddingStore::read(in);
        FAIL("expected a FormatError");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find('5') != std::string::npos);
    }
}

TEST_CASE("1000 random vectors survive write and read bitwise") {
    std::mt19937_64 rng(1);
    std::normal_distribution<float> nd;
    EmbeddingStore s(48);
    std::vector<float> v(48);
    for (PaperId id = 0; id < 1000; ++id) {
        for (auto& x : v)
            x = nd(rng);
        s.add(id * 3 + 1, v);
    }
    std::stringstream buf;
    s.write(buf);
    const auto bytes = buf.str();
    CHECK(bytes.size() == 4 + 4 + 8 + 1000 * (8 + 48 * 4));
    auto r = EmbeddingStore::read(buf);
    REQUIRE(r.size() == 1000);
    bool same = true;
    for (std::size_t i = 0; i < 1000; ++i) {
        same = same && r.id(i) == s.id(i) &&
               std::memcmp(r.vector(i).data(), s.vector(i).data(), 48 * sizeof(float)) == 0;
    }
    CHECK(same);
    std::stringstream again;
    r.write(again);
    CHECK(again.str() == bytes);
}

TEST_CASE("jsonl form roundtrips and load detects both formats") {
    laurel::testing::TempDir dir;
    EmbeddingStore s(3);
    std::vector<float> a{0.1f, -2.5f, 3e-8f}, b{1, 1, 1};
    s.add(11, a);
    s.add(12, b);
    {
        std::ofstream out(dir / "e.jsonl");
        s.write_jsonl(out);
    }
    s.save(dir / "e.emb");
    for (const auto* name : {"e.jsonl", "e.emb"}) {
        auto r = EmbeddingStore::load(dir / name);
        CHECK(r.dim() == 3);
        REQUIRE(r.size() == 2);
        CHECK(std::ranges::equal(*r.find(11), a));
        CHECK(std::ranges::equal(*r.find(12), b));
    }
}
