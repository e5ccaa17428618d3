#include <doctest.h>

#include <sstream>

#include "laurel/corpus.hpp"
#include "laurel/errors.hpp"

using namespace laurel;

TEST_CASE("three well-formed lines give three records") {
    std::istringstream in(R"({"id": 1, "title": "a", "year": 2000, "references": []}
{"id": 2, "title": "b", "year": 2001, "references": [1]}
{"id": 3, "title": "c", "year": 2002, "references": [1, 2], "award": true}
)");
    auto r = parse_corpus(in);
    CHECK(r.records.size() == 3);
    CHECK(r.malformed_lines == 0);
    CHECK(r.warnings.empty());
    CHECK(r.records[2].award);
    CHECK_FALSE(r.records[0].award);
    CHECK_FALSE(r.records[0].abstract.has_value());
}

TEST_CASE("duplicate references collapse") {
    std::istringstream in(R"({"id": "P", "title": "t", "year": 1999, "references": ["X", "X"]})");
    auto r = parse_corpus(in);
    REQUIRE(r.records.size() == 1);
    REQUIRE(r.records[0].references.size() == 1);
    CHECK(r.records[0].references[0] == intern_id("X"));
}

TEST_CASE("self citation is dropped") {
    std::istringstream in(R"({"id": 5, "title": "t", "year": 1999, "references": [5, 6]})");
    auto r = parse_corpus(in);
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].references == std::vector<PaperId>{6});
}

TEST_CASE("one malformed line among five is skipped and counted") {
    std::istringstream in(R"({"id": 1, "title": "a", "year": 2000, "references": []}
{"id": 2, "title": "b", "year": 2000, "references": []}
{"id": 3, "title": "c", "year": 2000, "refer
{"id": 4, "title": "d", "year": 2000, "references": []}
{"id": 5, "title": "e", "year": 2000, "references": []}
)");
    auto r = parse_corpus(in);
    CHECK(r.records.size() == 4);
    CHECK(r.malformed_lines == 1);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].rfind("line 3", 0) == 0);
}

TEST_CASE("duplicate id is fatal") {
    std::istringstream in(R"({"id": 1, "title": "a", "year": 2000, "references": []}
{"id": 1, "title": "b", "year": 2001, "references": []}
)");
    CHECK_THROWS_AS(parse_corpus(in), CorpusError);
}

TEST_CASE("missing file is an I/O error") {
    CHECK_THROWS_AS(load_corpus("/nonexistent/laurel/corpus.jsonl"), IoError);
}

TEST_CASE("id interning keeps numeric and hashed ranges apart") {
    CHECK(intern_id("42") == 42);
    CHECK(intern_id("0") == 0);
    const auto h = intern_id("W2741809807x");
    CHECK((h >> 63) == 1);
    CHECK(intern_id("W2741809807x") == h);
    CHECK(intern_id("abc") != intern_id("abd"));
    // 2^63 does not fit the numeric range.
    CHECK((intern_id("9223372036854775808") >> 63) == 1);
    CHECK(intern_id("9223372036854775807") == 9223372036854775807ULL);
}

TEST_CASE("write then parse preserves records") {
    std::vector<PaperRecord> recs(2);
    recs[0] = {10, "first", std::string("abs"), 2001, {11}, true};
    recs[1] = {11, "second \"quoted\"", std::nullopt, 1999, {}, false};
    std::stringstream io;
    write_corpus(io, recs);
    auto r = parse_corpus(io);
    REQUIRE(r.records.size() == 2);
    CHECK(r.records[0].id == 10);
    CHECK(r.records[0].abstract == std::optional<std::string>("abs"));
    CHECK(r.records[0].references == std::vector<PaperId>{11});
    CHECK(r.records[0].award);
    CHECK(r.records[1].title == "second \"quoted\"");
    CHECK_FALSE(r.records[1].abstract.has_value());
    CHECK(r.records[1].year == 1999);
}
