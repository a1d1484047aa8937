#include "corpusranker/preprocess.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "corpusranker/errors.hpp"
#include "corpusranker/hash.hpp"
#include "corpusranker/lemmatize.hpp"
#include "corpusranker/porter.hpp"

namespace corpusranker {

const char* reducer_name(Reducer r) {
    switch (r) {
        case Reducer::none: return "none";
        case Reducer::porter_stem: return "porter";
        case Reducer::lemmatize: return "lemmatize";
    }
    return "none";
}

Reducer reducer_from_name(const std::string& name) {
    if (name == "none") return Reducer::none;
    if (name == "porter" || name == "porter_stem" || name == "stem") return Reducer::porter_stem;
    if (name == "lemmatize" || name == "lemma") return Reducer::lemmatize;
    throw ConfigError("unknown reducer '" + name + "' (expected none, porter or lemmatize)");
}

namespace {

std::unordered_set<std::string> parse_stopword_lines(const std::string& text) {
    std::unordered_set<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        auto begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        auto end = line.find_last_not_of(" \t");
        out.insert(line.substr(begin, end - begin + 1));
    }
    return out;
}

}  // namespace

std::unordered_set<std::string> builtin_stopword_set() {
    static const std::unordered_set<std::string> set = parse_stopword_lines(builtin_stopword_text());
    return set;
}

std::unordered_set<std::string> load_stopword_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open stopword file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    auto set = parse_stopword_lines(buffer.str());
    if (set.empty()) {
        throw ConfigError("stopword file contains no tokens: " + path);
    }
    return set;
}

std::string stopword_content_hash(const std::unordered_set<std::string>& stopwords) {
    std::vector<std::string> sorted(stopwords.begin(), stopwords.end());
    std::sort(sorted.begin(), sorted.end());
    std::string joined;
    for (const auto& s : sorted) {
        joined += s;
        joined += '\n';
    }
    return fnv1a64_hex(joined);
}

TokenList normalize(const std::string& text, const PreprocessConfig& cfg, SourceKind kind) {
    std::string scratch;
    scratch.reserve(text.size());
    for (unsigned char c : text) {
        char mapped = static_cast<char>(c);
        if (cfg.lowercase && c >= 'A' && c <= 'Z') {
            mapped = static_cast<char>(c - 'A' + 'a');
        }
        if (cfg.strip_non_alnum) {
            unsigned char m = static_cast<unsigned char>(mapped);
            bool alnum = (m >= 'a' && m <= 'z') || (m >= 'A' && m <= 'Z') || (m >= '0' && m <= '9');
            if (!alnum) mapped = ' ';
        }
        scratch.push_back(mapped);
    }

    TokenList out;
    out.source_kind = kind;
    std::size_t i = 0;
    while (i < scratch.size()) {
        while (i < scratch.size() &&
               std::isspace(static_cast<unsigned char>(scratch[i]))) {
            ++i;
        }
        std::size_t start = i;
        while (i < scratch.size() &&
               !std::isspace(static_cast<unsigned char>(scratch[i]))) {
            ++i;
        }
        if (i == start) continue;
        std::string token = scratch.substr(start, i - start);
        if (cfg.stopwords.count(token)) continue;
        switch (cfg.reducer) {
            case Reducer::none: break;
            case Reducer::porter_stem: token = porter_stem(token); break;
            case Reducer::lemmatize:
                token = lemmatize(token, PosHint::auto_detect, cfg.lemma_exceptions);
                break;
        }
        out.tokens.push_back(std::move(token));
    }
    return out;
}

std::string normalized_key(const std::string& text, const PreprocessConfig& cfg) {
    TokenList tokens = normalize(text, cfg);
    std::string key;
    for (std::size_t i = 0; i < tokens.tokens.size(); ++i) {
        if (i) key.push_back(' ');
        key += tokens.tokens[i];
    }
    return key;
}

bool is_ascii_only(const std::string& text) {
    return std::all_of(text.begin(), text.end(), [](unsigned char c) { return c <= 0x7F; });
}

PreprocessedCorpus preprocess_corpus(const CorpusStore& store, const PreprocessConfig& cfg) {
    PreprocessedCorpus out;
    out.report.input_titles = store.documents.size();

    for (const auto& doc : store.documents) {
        if (cfg.ascii_filter && !is_ascii_only(doc.title)) {
            ++out.report.ascii_filtered;
            continue;
        }
        TokenList tokens = normalize(doc.title, cfg, SourceKind::title);
        if (tokens.empty()) {
            ++out.report.empty_after_normalize;
            continue;
        }
        out.doc_ids.push_back(doc.doc_id);
        out.titles.push_back(std::move(tokens));
    }
    out.report.surviving_titles = out.titles.size();

    out.topics.reserve(store.topics.size());
    for (const auto& topic : store.topics) {
        TopicTokens t;
        t.topic_id = topic.topic_id;
        t.query = normalize(topic.query, cfg, SourceKind::query);
        t.question = normalize(topic.question, cfg, SourceKind::question);
        t.narrative = normalize(topic.narrative, cfg, SourceKind::narrative);
        out.topics.push_back(std::move(t));
    }
    return out;
}

}  // namespace corpusranker
