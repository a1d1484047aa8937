#include <doctest.h>

#include <algorithm>

#include "corpusranker/errors.hpp"
#include "corpusranker/ingest.hpp"
#include "corpusranker/preprocess.hpp"
#include "support/temp_dir.hpp"

using namespace corpusranker;

namespace {

const char* kMetadataCsv =
    "cord_uid,title,abstract,pubmed_id\n"
    "rqkgrd2k,ebola virus come going,long text,100\n"
    "q1q5801p,essentials pulmonology,other text,101\n"
    "p6c57zzm,\"general, mechanisms antiviral\",more,102\n";

std::vector<DocumentRecord> docs_with_titles(std::initializer_list<const char*> titles) {
    std::vector<DocumentRecord> docs;
    int i = 0;
    for (const char* t : titles) {
        DocumentRecord d;
        d.doc_id = "doc" + std::to_string(i++);
        d.title = t;
        docs.push_back(d);
    }
    return docs;
}

}  // namespace

TEST_CASE("parse_metadata maps required and extra columns") {
    test_support::TempDir dir;
    auto path = dir.write("metadata.csv", kMetadataCsv);
    auto docs = parse_metadata(path);
    REQUIRE(docs.size() == 3);
    CHECK(docs[0].doc_id == "rqkgrd2k");
    CHECK(docs[0].title == "ebola virus come going");
    CHECK(docs[0].abstract_text == "long text");
    CHECK(docs[0].extra.at("pubmed_id") == "100");
    CHECK(docs[2].title == "general, mechanisms antiviral");
}

TEST_CASE("parse_metadata accepts cord.id and mixed-case headers") {
    test_support::TempDir dir;
    auto path = dir.write("metadata.csv", "Cord.Id,TITLE,Abstract\nx1,t,a\n");
    auto docs = parse_metadata(path);
    REQUIRE(docs.size() == 1);
    CHECK(docs[0].doc_id == "x1");
}

TEST_CASE("parse_metadata: header-only file gives empty list") {
    test_support::TempDir dir;
    auto path = dir.write("metadata.csv", "cord_uid,title,abstract\n");
    CHECK(parse_metadata(path).empty());
}

TEST_CASE("parse_metadata: missing column is a schema error naming it") {
    test_support::TempDir dir;
    auto path = dir.write("metadata.csv", "cord_uid,abstract\nx,y\n");
    CHECK_THROWS_WITH_AS(parse_metadata(path), "missing required column: title", SchemaError);
}

TEST_CASE("parse_metadata: missing file is an io error") {
    CHECK_THROWS_AS(parse_metadata("/nonexistent/metadata.csv"), IoError);
}

TEST_CASE("parse_topics orders by topic id and validates") {
    test_support::TempDir dir;
    auto path = dir.write("topics.csv",
                          "topic-id,query,question,narrative\n"
                          "3,q3,qq3,n3\n"
                          "1,coronavirus origin,what is the origin of COVID-19,"
                          "seeking range of information about the SARS-CoV-2 virus origin\n"
                          "2,q2,qq2,n2\n");
    auto topics = parse_topics(path);
    REQUIRE(topics.size() == 3);
    CHECK(topics[0].topic_id == 1);
    CHECK(topics[0].query == "coronavirus origin");
    CHECK(topics[0].question == "what is the origin of COVID-19");
    CHECK(topics[1].topic_id == 2);
    CHECK(topics[2].topic_id == 3);
}

TEST_CASE("parse_topics rejects non-integer and duplicate ids") {
    test_support::TempDir dir;
    auto bad = dir.write("bad.csv", "topic-id,query,question,narrative\nabc,q,qq,n\n");
    CHECK_THROWS_AS(parse_topics(bad), SchemaError);
    auto dup = dir.write("dup.csv", "topic-id,query,question,narrative\n1,q,qq,n\n1,r,rr,m\n");
    CHECK_THROWS_AS(parse_topics(dup), ValidationError);
}

TEST_CASE("parse_qrels validates labels and duplicates") {
    test_support::TempDir dir;
    auto path = dir.write("qrels.csv",
                          "topic-id,iteration,cord-id,judgement\n"
                          "1,0.5,010vptx3,2\n"
                          "1,1.0,05qgl1f,0\n");
    auto qrels = parse_qrels(path);
    REQUIRE(qrels.size() == 2);
    CHECK(qrels[0].topic_id == 1);
    CHECK(qrels[0].iteration == "0.5");
    CHECK(qrels[0].doc_id == "010vptx3");
    CHECK(qrels[0].label == 2);
    CHECK(qrels[1].label == 0);

    auto bad = dir.write("bad.csv", "topic-id,iteration,cord-id,judgement\n1,0.5,x,3\n");
    CHECK_THROWS_AS(parse_qrels(bad), ValidationError);
    auto dup = dir.write("dup.csv",
                         "topic-id,iteration,cord-id,judgement\n1,0.5,x,1\n1,1.0,x,2\n");
    CHECK_THROWS_AS(parse_qrels(dup), ValidationError);
}

TEST_CASE("drop_null_titles removes empty and whitespace titles") {
    auto docs = docs_with_titles({"good one", "", "   ", "another", "\t\n"});
    auto result = drop_null_titles(std::move(docs));
    CHECK(result.documents.size() == 2);
    CHECK(result.dropped == 3);
    CHECK(result.documents[0].title == "good one");
}

TEST_CASE("drop_null_titles keeps clean input unchanged") {
    auto docs = docs_with_titles({"a", "b"});
    auto result = drop_null_titles(std::move(docs));
    CHECK(result.documents.size() == 2);
    CHECK(result.dropped == 0);
}

TEST_CASE("deduplicate_titles collapses bracketed variants") {
    PreprocessConfig cfg;
    auto key = [&cfg](const std::string& t) { return normalized_key(t, cfg); };

    std::vector<DocumentRecord> docs;
    docs.push_back({"b-doc", "[Algemene leading]", "", {}});
    docs.push_back({"a-doc", "Algemene leading", "", {}});
    docs.push_back({"c-doc", "something else", "", {}});
    auto result = deduplicate_titles(std::move(docs), key);
    REQUIRE(result.documents.size() == 2);
    // smallest doc_id survives
    CHECK(result.documents[0].doc_id == "a-doc");
    CHECK(result.removed_duplicates == 1);
    CHECK(result.removed_empty_normalized == 0);
}

TEST_CASE("deduplicate_titles drops titles normalizing to nothing") {
    PreprocessConfig cfg;
    auto key = [&cfg](const std::string& t) { return normalized_key(t, cfg); };
    // "&& the ((" is stopwords and specials only
    std::vector<DocumentRecord> docs;
    docs.push_back({"a", "&& the ((", "", {}});
    docs.push_back({"b", "real title", "", {}});
    auto result = deduplicate_titles(std::move(docs), key);
    REQUIRE(result.documents.size() == 1);
    CHECK(result.documents[0].doc_id == "b");
    CHECK(result.removed_empty_normalized == 1);
}

TEST_CASE("deduplicate_titles is the identity on distinct titles") {
    PreprocessConfig cfg;
    auto key = [&cfg](const std::string& t) { return normalized_key(t, cfg); };
    auto docs = docs_with_titles({"alpha beta", "gamma delta", "epsilon zeta"});
    auto result = deduplicate_titles(docs, key);
    CHECK(result.documents == docs);
    CHECK(result.removed() == 0);
}

TEST_CASE("deduplicate is idempotent") {
    PreprocessConfig cfg;
    auto key = [&cfg](const std::string& t) { return normalized_key(t, cfg); };
    std::vector<DocumentRecord> docs;
    docs.push_back({"d1", "Shared Title", "", {}});
    docs.push_back({"d2", "shared title!", "", {}});
    docs.push_back({"d3", "unique", "", {}});
    auto once = deduplicate_titles(docs, key);
    auto twice = deduplicate_titles(once.documents, key);
    CHECK(once.documents == twice.documents);
    CHECK(twice.removed() == 0);
}

TEST_CASE("filter_non_ascii_titles removes non-ascii titles") {
    auto docs = docs_with_titles({"plain ascii", "si\xC3\xA8" "cle", "another"});
    auto result = filter_non_ascii_titles(std::move(docs));
    CHECK(result.documents.size() == 2);
    CHECK(result.removed == 1);
}

TEST_CASE("clean_documents conserves counts") {
    PreprocessConfig cfg;
    auto key = [&cfg](const std::string& t) { return normalized_key(t, cfg); };
    std::vector<DocumentRecord> docs;
    docs.push_back({"d1", "Title One", "", {}});
    docs.push_back({"d1", "Title One copy with same id", "", {}});
    docs.push_back({"d2", "", "", {}});
    docs.push_back({"d3", "title one", "", {}});
    docs.push_back({"d4", "the && of", "", {}});
    docs.push_back({"d5", "ascii title", "", {}});
    docs.push_back({"d6", "caf\xC3\xA9 science", "", {}});

    auto result = clean_documents(std::move(docs), key, true);
    const auto& c = result.counts;
    CHECK(c.parsed == 7);
    CHECK(c.removed_duplicate_ids == 1);
    CHECK(c.dropped_null_titles == 1);
    CHECK(c.removed_duplicate_titles == 1);
    CHECK(c.removed_empty_normalized == 1);
    CHECK(c.removed_non_ascii == 1);
    CHECK(c.survivors == 2);
    CHECK(c.parsed == c.survivors + c.total_removed());
}

TEST_CASE("store persist/load round-trip is field-identical") {
    test_support::TempDir dir;
    CorpusStore store;
    store.documents.push_back({"id1", "title one", "abstract one", {{"extra", "1"}}});
    store.documents.push_back({"id2", "title two", "", {}});
    store.documents.push_back({"id3", "title three", "abs", {{"a", "x"}, {"b", "y"}}});
    store.topics.push_back({1, "q", "qq", "n"});
    store.judgments.push_back({1, "0.5", "id1", 2});
    store.provenance.metadata_path = "m.csv";
    store.provenance.cleaning.parsed = 3;
    store.provenance.cleaning.survivors = 3;

    auto path = dir.file("store.crkr");
    persist_store(store, path);
    CorpusStore loaded = load_store(path);
    CHECK(loaded == store);
}

TEST_CASE("load_store rejects garbage files") {
    test_support::TempDir dir;
    auto empty = dir.write("zero.crkr", "");
    CHECK_THROWS_AS(load_store(empty), FormatError);
    auto garbage = dir.write("garbage.crkr", "not a container at all, truly");
    CHECK_THROWS_AS(load_store(garbage), FormatError);
}
