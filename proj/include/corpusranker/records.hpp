#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace corpusranker {

// One corpus row. `extra` carries passthrough columns (pubmed id, publish
// time, ...) that are stored but never interpreted.
struct DocumentRecord {
    std::string doc_id;
    std::string title;
    std::string abstract_text;
    std::map<std::string, std::string> extra;

    bool operator==(const DocumentRecord&) const = default;
};

// A search need at three granularities: short query, medium question, long
// narrative.
struct TopicRecord {
    int topic_id = 0;
    std::string query;
    std::string question;
    std::string narrative;

    bool operator==(const TopicRecord&) const = default;
};

// Graded relevance judgment. `iteration` is carried verbatim; nothing
// downstream interprets it.
struct JudgmentRecord {
    int topic_id = 0;
    std::string iteration;
    std::string doc_id;
    int label = 0;  // 0 non-relevant, 1 partially relevant, 2 relevant

    bool operator==(const JudgmentRecord&) const = default;
};

// Counters for every stage of corpus cleaning. parsed == survivors + the sum
// of all removal counters.
struct CleaningCounts {
    std::uint64_t parsed = 0;
    std::uint64_t dropped_null_titles = 0;
    std::uint64_t removed_duplicate_ids = 0;
    std::uint64_t removed_duplicate_titles = 0;
    std::uint64_t removed_empty_normalized = 0;
    std::uint64_t removed_non_ascii = 0;
    std::uint64_t survivors = 0;

    std::uint64_t total_removed() const {
        return dropped_null_titles + removed_duplicate_ids + removed_duplicate_titles +
               removed_empty_normalized + removed_non_ascii;
    }

    bool operator==(const CleaningCounts&) const = default;
};

struct Provenance {
    std::string metadata_path;
    std::string topics_path;
    std::string qrels_path;
    std::string config_hash;
    std::string stopword_hash;
    CleaningCounts cleaning;

    bool operator==(const Provenance&) const = default;
};

// Cleaned corpus: documents in stable, contiguous order plus topics and
// judgments. Immutable after construction; safe to share across threads.
struct CorpusStore {
    std::vector<DocumentRecord> documents;
    std::vector<TopicRecord> topics;
    std::vector<JudgmentRecord> judgments;
    Provenance provenance;

    bool operator==(const CorpusStore&) const = default;
};

}  // namespace corpusranker
