#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "corpusranker/records.hpp"

namespace corpusranker {

// Maps a raw title to its deduplication key (normally the joined token list
// of the preprocess module's normalization). An empty key marks the title as
// content-free.
using TitleKeyFn = std::function<std::string(const std::string&)>;

// Column names are matched case-insensitively, with '.', '-' and '_' treated
// as the same separator. Required metadata columns: cord_uid (or cord.id),
// title, abstract. All other columns land in DocumentRecord::extra.
std::vector<DocumentRecord> parse_metadata(const std::string& path);

// Required columns: topic-id, query, question, narrative. Result is ordered
// by topic_id ascending. Non-integer or non-positive ids are schema errors;
// duplicate ids are validation errors.
std::vector<TopicRecord> parse_topics(const std::string& path);

// Required columns: topic-id, iteration, cord-id, judgement. Labels outside
// {0,1,2} and duplicate (topic_id, doc_id) pairs are validation errors.
std::vector<JudgmentRecord> parse_qrels(const std::string& path);

struct DropResult {
    std::vector<DocumentRecord> documents;
    std::uint64_t dropped = 0;
};

// Removes records whose title is empty or whitespace-only.
DropResult drop_null_titles(std::vector<DocumentRecord> docs);

struct DedupResult {
    std::vector<DocumentRecord> documents;
    std::uint64_t removed_duplicates = 0;
    std::uint64_t removed_empty_normalized = 0;

    std::uint64_t removed() const { return removed_duplicates + removed_empty_normalized; }
};

// Keeps exactly one record per distinct normalized title: the one with the
// lexicographically smallest doc_id. Titles whose key is empty are dropped.
// Surviving records keep their input order.
DedupResult deduplicate_titles(std::vector<DocumentRecord> docs, const TitleKeyFn& key);

struct AsciiFilterResult {
    std::vector<DocumentRecord> documents;
    std::uint64_t removed = 0;
};

// Removes records whose title contains any byte above 0x7F.
AsciiFilterResult filter_non_ascii_titles(std::vector<DocumentRecord> docs);

struct DocIdDedupResult {
    std::vector<DocumentRecord> documents;
    std::uint64_t removed = 0;
};

// Keeps the first record per doc_id. Real metadata exports repeat ids when a
// paper arrives from several sources; the store requires unique ids.
DocIdDedupResult deduplicate_doc_ids(std::vector<DocumentRecord> docs);

// Full cleaning chain: doc-id dedup, null-title drop, normalized-title dedup,
// ASCII filter. Counts land in CleaningCounts; parsed = survivors + removals.
struct CleanResult {
    std::vector<DocumentRecord> documents;
    CleaningCounts counts;
};

CleanResult clean_documents(std::vector<DocumentRecord> docs, const TitleKeyFn& key,
                            bool ascii_filter);

// Versioned binary container round-trip for the whole store.
void persist_store(const CorpusStore& store, const std::string& path);
CorpusStore load_store(const std::string& path);

}  // namespace corpusranker
