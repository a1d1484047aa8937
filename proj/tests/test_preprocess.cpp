#include <doctest.h>

#include <fstream>
#include <sstream>

#include "corpusranker/errors.hpp"
#include "corpusranker/hash.hpp"
#include "corpusranker/preprocess.hpp"
#include "support/temp_dir.hpp"

using namespace corpusranker;

TEST_CASE("normalize strips brackets and lowercases") {
    PreprocessConfig cfg;
    auto tokens = normalize("[Algemene leading]", cfg);
    CHECK(tokens.tokens == std::vector<std::string>{"algemene", "leading"});
}

TEST_CASE("normalize of empty input is empty") {
    PreprocessConfig cfg;
    CHECK(normalize("", cfg).tokens.empty());
}

TEST_CASE("normalize removes pinned stopwords and splits on hyphens") {
    PreprocessConfig cfg;
    auto tokens = normalize("What is the origin of COVID-19", cfg);
    CHECK(tokens.tokens == std::vector<std::string>{"origin", "covid", "19"});
}

TEST_CASE("normalize is idempotent under reducer none") {
    PreprocessConfig cfg;
    const std::string inputs[] = {"Some [Title] here!", "COVID-19, twice: COVID-19",
                                  "all stop words the of and", "MiXeD CaSe TeXt 42"};
    for (const auto& input : inputs) {
        auto once = normalize(input, cfg);
        std::string joined;
        for (const auto& t : once.tokens) {
            joined += t;
            joined += ' ';
        }
        auto twice = normalize(joined, cfg);
        CHECK(once.tokens == twice.tokens);
    }
}

TEST_CASE("no stopword survives normalization under defaults") {
    PreprocessConfig cfg;
    auto tokens = normalize("the cat is on the mat because it was warm", cfg);
    for (const auto& t : tokens.tokens) {
        CAPTURE(t);
        CHECK(cfg.stopwords.count(t) == 0);
    }
}

TEST_CASE("normalize is deterministic") {
    PreprocessConfig cfg;
    cfg.reducer = Reducer::porter_stem;
    auto a = normalize("Viral infections spreading worldwide", cfg);
    auto b = normalize("Viral infections spreading worldwide", cfg);
    CHECK(a.tokens == b.tokens);
}

TEST_CASE("reducers change spellings but not counts") {
    PreprocessConfig plain;
    PreprocessConfig stemmed;
    stemmed.reducer = Reducer::porter_stem;
    const std::string text = "studies testing infections repeatedly";
    CHECK(normalize(text, plain).size() == normalize(text, stemmed).size());
}

TEST_CASE("is_ascii_only") {
    CHECK(is_ascii_only("ebola virus come going"));
    CHECK_FALSE(is_ascii_only("\xE4\xB8\xAD\xE6\x96\x87"));  // chinese characters
    CHECK_FALSE(is_ascii_only("na\xC3\xAFve"));
    CHECK(is_ascii_only(""));
}

TEST_CASE("builtin stopword text matches the shipped data file") {
    std::ifstream in(std::string(PROJECT_DATA_DIR) + "/stopwords.txt", std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str() == builtin_stopword_text());
}

TEST_CASE("stopword file loader handles comments and blanks") {
    test_support::TempDir dir;
    auto path = dir.write("stop.txt", "# comment\nfoo\n\nbar # trailing comment\n");
    auto set = load_stopword_file(path);
    CHECK(set == std::unordered_set<std::string>{"foo", "bar"});
}

TEST_CASE("stopword hash is order-insensitive content hash") {
    std::unordered_set<std::string> a{"x", "y", "z"};
    std::unordered_set<std::string> b{"z", "x", "y"};
    CHECK(stopword_content_hash(a) == stopword_content_hash(b));
    CHECK(stopword_content_hash(a) != stopword_content_hash({"x", "y"}));
}

TEST_CASE("preprocess_corpus filters non-ascii and empty titles") {
    CorpusStore store;
    store.documents.push_back({"d1", "\xE4\xB8\xAD\xE6\x96\x87 title", "", {}});
    store.documents.push_back({"d2", "plain ascii title", "", {}});
    store.documents.push_back({"d3", "second ascii title", "", {}});
    store.documents.push_back({"d4", "the of and", "", {}});  // all stopwords
    store.topics.push_back({1, "coronavirus origin", "what is the origin", "seeking info"});

    PreprocessConfig cfg;
    auto out = preprocess_corpus(store, cfg);
    CHECK(out.report.input_titles == 4);
    CHECK(out.report.ascii_filtered == 1);
    CHECK(out.report.empty_after_normalize == 1);
    CHECK(out.report.surviving_titles == 2);
    REQUIRE(out.titles.size() == 2);
    CHECK(out.doc_ids == std::vector<std::string>{"d2", "d3"});
    REQUIRE(out.topics.size() == 1);
    CHECK(out.topics[0].query.tokens == std::vector<std::string>{"coronavirus", "origin"});
    CHECK(out.topics[0].query.source_kind == SourceKind::query);
}

TEST_CASE("preprocess_corpus keeps non-ascii titles when the filter is off") {
    CorpusStore store;
    store.documents.push_back({"d1", "caf\xC3\xA9 science", "", {}});
    PreprocessConfig cfg;
    cfg.ascii_filter = false;
    auto out = preprocess_corpus(store, cfg);
    CHECK(out.report.ascii_filtered == 0);
    CHECK(out.titles.size() == 1);
}
