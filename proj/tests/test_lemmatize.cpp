#include <doctest.h>

#include "corpusranker/errors.hpp"
#include "corpusranker/lemmatize.hpp"
#include "support/temp_dir.hpp"

using namespace corpusranker;

TEST_CASE("lemmatize handles the dictionary cases") {
    CHECK(lemmatize("studies") == "study");
    CHECK(lemmatize("virus") == "virus");
    CHECK(lemmatize("viruses") == "virus");
}

TEST_CASE("builtin exceptions file matches the shipped data file") {
    auto file = load_lemma_file(std::string(PROJECT_DATA_DIR) + "/lemma_exceptions.tsv");
    CHECK(file == builtin_lemma_exceptions());
}

TEST_CASE("regular plural rules") {
    CHECK(lemmatize("cases") == "case");
    CHECK(lemmatize("infections") == "infection");
    CHECK(lemmatize("antibodies") == "antibody");
    CHECK(lemmatize("boxes") == "box");
    CHECK(lemmatize("churches") == "church");
    CHECK(lemmatize("crashes") == "crash");
    CHECK(lemmatize("classes") == "class");
    CHECK(lemmatize("heroes") == "hero");
    CHECK(lemmatize("causes") == "cause");
}

TEST_CASE("guards protect words that merely end in s") {
    CHECK(lemmatize("analysis") == "analysis");
    CHECK(lemmatize("species") == "species");
    CHECK(lemmatize("sars") == "sars");
    CHECK(lemmatize("news") == "news");
    CHECK(lemmatize("across") == "across");
}

TEST_CASE("verb rules restore bases") {
    CHECK(lemmatize("tested") == "test");
    CHECK(lemmatize("testing") == "test");
    CHECK(lemmatize("hoping") == "hope");
    CHECK(lemmatize("hopping") == "hop");
    CHECK(lemmatize("running") == "run");
    CHECK(lemmatize("falling") == "fall");
    CHECK(lemmatize("studied") == "study");
    CHECK(lemmatize("identified") == "identify");
    CHECK(lemmatize("making", PosHint::verb) == "make");
    CHECK(lemmatize("used") == "use");
    CHECK(lemmatize("caused") == "cause");
}

TEST_CASE("pos hints restrict the rule set") {
    // noun mode does not touch -ed forms
    CHECK(lemmatize("tested", PosHint::noun) == "tested");
    CHECK(lemmatize("cats", PosHint::noun) == "cat");
    CHECK(lemmatize("runs", PosHint::verb) == "run");
}

TEST_CASE("unknown shapes pass through unchanged") {
    CHECK(lemmatize("covid") == "covid");
    CHECK(lemmatize("19") == "19");
    CHECK(lemmatize("coronavirus") == "coronavirus");
}

TEST_CASE("lemmatizer is total: non-empty in, non-empty out") {
    for (const std::string w : {"s", "es", "ies", "ed", "ing", "a", "xyzzys"}) {
        CHECK_FALSE(lemmatize(w).empty());
    }
}

TEST_CASE("custom dictionary file overrides") {
    test_support::TempDir dir;
    auto path = dir.write("lemma.tsv", "foos\tbar\n");
    auto dict = load_lemma_file(path);
    CHECK(lemmatize("foos", PosHint::auto_detect, dict) == "bar");
}

TEST_CASE("malformed dictionary line is a format error") {
    test_support::TempDir dir;
    auto path = dir.write("bad.tsv", "no-tab-here\n");
    CHECK_THROWS_AS(load_lemma_file(path), FormatError);
}
