#include <doctest.h>

#include <cmath>

#include "corpusranker/errors.hpp"
#include "corpusranker/sparse.hpp"

using namespace corpusranker;

namespace {

TokenList toks(std::initializer_list<const char*> words) {
    TokenList t;
    for (const char* w : words) t.tokens.emplace_back(w);
    return t;
}

}  // namespace

TEST_CASE("build_vocabulary covers documents and topics") {
    std::vector<TokenList> docs{toks({"a", "b"}), toks({"b", "c"})};
    std::vector<TokenList> topics{toks({"d"})};
    auto vocab = build_vocabulary(docs, topics);
    REQUIRE(vocab.size() == 4);
    CHECK(vocab.n_documents() == 2);
    // indices assigned lexicographically
    CHECK(vocab.index_of("a") == 0);
    CHECK(vocab.index_of("b") == 1);
    CHECK(vocab.index_of("c") == 2);
    CHECK(vocab.index_of("d") == 3);
    CHECK(vocab.document_frequency(0) == 1);
    CHECK(vocab.document_frequency(1) == 2);
    CHECK(vocab.document_frequency(2) == 1);
    CHECK(vocab.document_frequency(3) == 0);  // topic-only token
}

TEST_CASE("df counts documents, not occurrences") {
    std::vector<TokenList> docs{toks({"x", "x", "x"})};
    auto vocab = build_vocabulary(docs, {});
    REQUIRE(vocab.size() == 1);
    CHECK(vocab.document_frequency(0) == 1);
}

TEST_CASE("identical documents each count toward df") {
    std::vector<TokenList> docs{toks({"w"}), toks({"w"}), toks({"w"})};
    auto vocab = build_vocabulary(docs, {});
    CHECK(vocab.document_frequency(0) == 3);
}

TEST_CASE("empty corpus is an error") {
    std::vector<TokenList> docs{toks({})};
    CHECK_THROWS_AS(build_vocabulary(docs, {}), ValidationError);
}

TEST_CASE("bow_vector counts in-vocabulary tokens") {
    auto vocab = build_vocabulary({toks({"covid", "vaccine", "origin"})}, {});
    auto v = bow_vector(toks({"covid", "covid", "vaccine"}), vocab);
    REQUIRE(v.entries.size() == 2);
    CHECK(v.entries[0].first == static_cast<std::uint32_t>(vocab.index_of("covid")));
    CHECK(v.entries[0].second == 2.0);
    CHECK(v.entries[1].second == 1.0);
    CHECK(v.dimension == 3);
}

TEST_CASE("bow_vector of empty or all-OOV input is empty") {
    auto vocab = build_vocabulary({toks({"a"})}, {});
    CHECK(bow_vector(toks({}), vocab).entries.empty());
    CHECK(bow_vector(toks({"zzz", "yyy"}), vocab).entries.empty());
}

TEST_CASE("bow L1 norm equals the in-vocabulary token count") {
    auto vocab = build_vocabulary({toks({"a", "b", "c"})}, {});
    auto v = bow_vector(toks({"a", "a", "b", "oov"}), vocab);
    CHECK(v.l1_norm() == 3.0);
}

TEST_CASE("tf is occurrences over total tokens") {
    CHECK(tf("a", toks({"a", "b", "a"})) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(tf("z", toks({"a", "b"})) == 0.0);
    CHECK(tf("a", toks({"a"})) == 1.0);
    CHECK_THROWS_AS(tf("a", toks({})), ValidationError);
}

TEST_CASE("tf sums to at most one over distinct tokens") {
    auto list = toks({"a", "b", "a", "c", "c", "c"});
    double sum = tf("a", list) + tf("b", list) + tf("c", list);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("idf is the natural log of N over df") {
    // four documents, one containing the token
    std::vector<TokenList> docs{toks({"rare", "x"}), toks({"x"}), toks({"x"}), toks({"x"})};
    auto vocab = build_vocabulary(docs, {});
    CHECK(idf("rare", vocab) == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    CHECK(idf("rare", vocab) == doctest::Approx(1.3863).epsilon(1e-4));
    CHECK(idf("x", vocab) == 0.0);  // ubiquitous word: ln(4/4)
}

TEST_CASE("idf of a single-document corpus is zero") {
    auto vocab = build_vocabulary({toks({"only"})}, {});
    CHECK(idf("only", vocab) == 0.0);
}

TEST_CASE("topic-only token is smoothed to df=1, never a crash") {
    auto vocab = build_vocabulary({toks({"a"}), toks({"b"})}, {toks({"topiconly"})});
    CHECK(idf("topiconly", vocab) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("idf is antitone in document frequency") {
    std::vector<TokenList> docs{toks({"common", "mid", "rare"}), toks({"common", "mid"}),
                                toks({"common"})};
    auto vocab = build_vocabulary(docs, {});
    CHECK(idf("rare", vocab) > idf("mid", vocab));
    CHECK(idf("mid", vocab) > idf("common", vocab));
}

TEST_CASE("tfidf_vector evaluates the formula verbatim") {
    // corpus {a b}, {a c}: tfidf of [a, b]: a -> (1/2)*ln(2/2)=0 omitted,
    // b -> (1/2)*ln(2/1)
    std::vector<TokenList> docs{toks({"a", "b"}), toks({"a", "c"})};
    auto vocab = build_vocabulary(docs, {});
    auto v = tfidf_vector(toks({"a", "b"}), vocab);
    REQUIRE(v.entries.size() == 1);
    CHECK(v.entries[0].first == static_cast<std::uint32_t>(vocab.index_of("b")));
    CHECK(v.entries[0].second == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
    CHECK(v.entries[0].second == doctest::Approx(0.3466).epsilon(1e-4));
}

TEST_CASE("word in every document has weight exactly zero") {
    std::vector<TokenList> docs{toks({"every", "x"}), toks({"every", "y"})};
    auto vocab = build_vocabulary(docs, {});
    auto v = tfidf_vector(toks({"every"}), vocab);
    CHECK(v.entries.empty());
}

TEST_CASE("single-document corpus yields all-zero tfidf") {
    auto vocab = build_vocabulary({toks({"a", "b", "c"})}, {});
    CHECK(tfidf_vector(toks({"a", "b"}), vocab).entries.empty());
}

TEST_CASE("tfidf of empty tokens is empty, not an error") {
    auto vocab = build_vocabulary({toks({"a"})}, {});
    CHECK(tfidf_vector(toks({}), vocab).entries.empty());
}

TEST_CASE("sparse vector entries are sorted and nonzero") {
    std::vector<TokenList> docs{toks({"m", "a", "z", "a"}), toks({"q"})};
    auto vocab = build_vocabulary(docs, {});
    auto v = tfidf_vector(toks({"z", "a", "m", "a"}), vocab);
    for (std::size_t i = 1; i < v.entries.size(); ++i) {
        CHECK(v.entries[i - 1].first < v.entries[i].first);
    }
    for (const auto& [idx, val] : v.entries) CHECK(val != 0.0);
}
