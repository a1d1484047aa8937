#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "corpusranker/lemmatize.hpp"
#include "corpusranker/records.hpp"

namespace corpusranker {

enum class Reducer { none, porter_stem, lemmatize };

const char* reducer_name(Reducer r);
Reducer reducer_from_name(const std::string& name);

// Pinned English stopword list compiled into the binary; identical bytes are
// shipped as data/stopwords.txt.
const std::string& builtin_stopword_text();
std::unordered_set<std::string> builtin_stopword_set();

// Stopword file: UTF-8, one token per line, '#' starts a comment line.
std::unordered_set<std::string> load_stopword_file(const std::string& path);

// Provenance hash of whatever stopword content is in use.
std::string stopword_content_hash(const std::unordered_set<std::string>& stopwords);

struct PreprocessConfig {
    bool lowercase = true;
    bool strip_non_alnum = true;
    std::unordered_set<std::string> stopwords = builtin_stopword_set();
    Reducer reducer = Reducer::none;
    bool ascii_filter = true;
    LemmaExceptions lemma_exceptions = builtin_lemma_exceptions();
};

enum class SourceKind { title, query, question, narrative, combined };

struct TokenList {
    std::vector<std::string> tokens;
    SourceKind source_kind = SourceKind::combined;

    bool empty() const { return tokens.empty(); }
    std::size_t size() const { return tokens.size(); }

    bool operator==(const TokenList&) const = default;
};

// Lowercase, replace every non-alphanumeric character by a space, split on
// whitespace runs, drop stopwords, then apply the configured reducer
// per token. Total: any input (including empty) yields a valid TokenList.
TokenList normalize(const std::string& text, const PreprocessConfig& cfg,
                    SourceKind kind = SourceKind::combined);

// Joined normalization output; used as the title deduplication key.
std::string normalized_key(const std::string& text, const PreprocessConfig& cfg);

// True iff every byte is <= 0x7F.
bool is_ascii_only(const std::string& text);

struct FilterReport {
    std::uint64_t input_titles = 0;
    std::uint64_t ascii_filtered = 0;
    std::uint64_t empty_after_normalize = 0;
    std::uint64_t surviving_titles = 0;
};

struct TopicTokens {
    int topic_id = 0;
    TokenList query;
    TokenList question;
    TokenList narrative;
};

struct PreprocessedCorpus {
    std::vector<std::string> doc_ids;  // parallel to titles
    std::vector<TokenList> titles;
    std::vector<TopicTokens> topics;
    FilterReport report;
};

// Tokenizes every title and every topic field. Non-ASCII titles are removed
// when cfg.ascii_filter is set; titles normalizing to nothing are removed and
// counted.
PreprocessedCorpus preprocess_corpus(const CorpusStore& store, const PreprocessConfig& cfg);

}  // namespace corpusranker
