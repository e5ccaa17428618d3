#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "temp_dir.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string("\"") + LAUREL_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t line_count(const fs::path& p) {
    std::ifstream in(p);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);)
        n += !line.empty();
    return n;
}

}  // namespace

TEST_CASE("ingest, sample and features on the six paper fixture") {
    laurel::testing::TempDir dir;
    const fs::path corpus = fs::path(LAUREL_TEST_DATA_DIR) / "six_papers.jsonl";
    REQUIRE(run("ingest --corpus " + q(corpus) + " --graph " + q(dir / "g.cgr")) == 0);
    REQUIRE(run("sample --graph " + q(dir / "g.cgr") + " --n 6 --seed 3 --out " + q(dir / "ids.txt")) == 0);
    REQUIRE(run("features --graph " + q(dir / "g.cgr") + " --ids " + q(dir / "ids.txt") +
                " --delta 2 --out " + q(dir / "f.csv")) == 0);
    CHECK(line_count(dir / "f.csv") == 7);
}

TEST_CASE("train twice gives byte-identical model files") {
    laurel::testing::TempDir dir;
    REQUIRE(run("synth --papers 600 --winners 60 --seed 5 --corpus " + q(dir / "c.jsonl") +
                " --embeddings " + q(dir / "e.emb")) == 0);
    REQUIRE(run("ingest --corpus " + q(dir / "c.jsonl") + " --graph " + q(dir / "g.cgr")) == 0);
    REQUIRE(run("features --graph " + q(dir / "g.cgr") + " --out " + q(dir / "f.csv")) == 0);
    const std::string train = "train --features " + q(dir / "f.csv") + " --embeddings " +
                              q(dir / "e.emb") + " --epochs 60 --seed 9";
    REQUIRE(run(train + " --model " + q(dir / "m1.json") + " --metrics " + q(dir / "x1.json")) == 0);
    REQUIRE(run(train + " --model " + q(dir / "m2.json") + " --metrics " + q(dir / "x2.json")) == 0);
    const auto a = read_file(dir / "m1.json");
    CHECK_FALSE(a.empty());
    CHECK(a == read_file(dir / "m2.json"));
    CHECK(read_file(dir / "x1.json") == read_file(dir / "x2.json"));

    REQUIRE(run("evaluate --model " + q(dir / "m1.json") + " --features " + q(dir / "f.csv") +
                " --embeddings " + q(dir / "e.emb") + " --out-dir " + q(dir / "eval")) == 0);
    for (const char* name : {"pr_curve.csv", "roc_curve.csv", "f1_by_year.csv", "metrics.json"})
        CHECK(fs::exists(dir / "eval" / name));

    REQUIRE(run("explain --features " + q(dir / "f.csv") + " --out-dir " + q(dir / "explain")) == 0);
    CHECK(fs::exists(dir / "explain" / "feature_dist.csv"));

    // Schema mismatch on the model file is a diagnosed failure.
    auto text = a;
    const std::string key = "\"schema_version\": 1";
    REQUIRE(text.find(key) != std::string::npos);
    text.replace(text.find(key), key.size(), "\"schema_version\": 7");
    std::ofstream(dir / "bad.json") << text;
    CHECK(run("evaluate --model " + q(dir / "bad.json") + " --features " + q(dir / "f.csv") +
              " --embeddings " + q(dir / "e.emb") + " --out-dir " + q(dir / "eval2")) != 0);
}

TEST_CASE("missing inputs and unknown flags fail") {
    laurel::testing::TempDir dir;
    CHECK(run("ingest --corpus /nonexistent/corpus.jsonl --graph " + q(dir / "g.cgr")) != 0);
    CHECK(run("sample --bogus") != 0);
    CHECK(run("nosuchcommand") != 0);
}
