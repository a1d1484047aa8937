#include "corpusranker/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "corpusranker/container.hpp"
#include "corpusranker/csv.hpp"
#include "corpusranker/errors.hpp"

namespace corpusranker {

namespace {

// Lowercase and collapse '.', '-', '_' so that cord_uid, cord.uid and
// cord-uid all compare equal.
std::string canonical_column(std::string_view name) {
    std::string out;
    out.reserve(name.size());
    for (char c : name) {
        if (c == '.' || c == '-' || c == '_') {
            out.push_back(' ');
        } else {
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    return out;
}

struct HeaderIndex {
    std::vector<std::string> canonical;

    explicit HeaderIndex(const CsvRow& header) {
        canonical.reserve(header.fields.size());
        for (const auto& f : header.fields) canonical.push_back(canonical_column(f));
    }

    std::optional<std::size_t> find(std::initializer_list<const char*> candidates) const {
        for (const char* cand : candidates) {
            auto it = std::find(canonical.begin(), canonical.end(), cand);
            if (it != canonical.end()) {
                return static_cast<std::size_t>(it - canonical.begin());
            }
        }
        return std::nullopt;
    }

    std::size_t require(std::initializer_list<const char*> candidates, const char* label) const {
        auto idx = find(candidates);
        if (!idx) {
            throw SchemaError(std::string("missing required column: ") + label);
        }
        return *idx;
    }
};

const std::string& field_at(const CsvRow& row, std::size_t idx) {
    static const std::string empty;
    return idx < row.fields.size() ? row.fields[idx] : empty;
}

void check_width(const CsvRow& row, std::size_t expected) {
    if (row.fields.size() != expected) {
        throw ParseError("row has " + std::to_string(row.fields.size()) + " fields, header has " +
                             std::to_string(expected),
                         row.line);
    }
}

int parse_int_field(const std::string& value, const char* label, std::size_t line) {
    std::size_t pos = 0;
    int parsed = 0;
    try {
        parsed = std::stoi(value, &pos);
    } catch (const std::exception&) {
        throw SchemaError(std::string("non-integer ") + label + " '" + value + "' (line " +
                          std::to_string(line) + ")");
    }
    if (pos != value.size()) {
        throw SchemaError(std::string("non-integer ") + label + " '" + value + "' (line " +
                          std::to_string(line) + ")");
    }
    return parsed;
}

bool is_blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

std::vector<DocumentRecord> parse_metadata(const std::string& path) {
    auto rows = parse_csv_file(path);
    if (rows.empty()) {
        throw SchemaError("metadata file has no header row: " + path);
    }
    HeaderIndex header(rows[0]);
    const std::size_t id_col = header.require({"cord uid", "cord id"}, "cord_uid");
    const std::size_t title_col = header.require({"title"}, "title");
    const std::size_t abstract_col = header.require({"abstract"}, "abstract");

    std::vector<DocumentRecord> docs;
    docs.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        check_width(rows[r], rows[0].fields.size());
        DocumentRecord doc;
        doc.doc_id = field_at(rows[r], id_col);
        doc.title = field_at(rows[r], title_col);
        doc.abstract_text = field_at(rows[r], abstract_col);
        if (doc.doc_id.empty()) {
            throw ValidationError("empty document id (line " + std::to_string(rows[r].line) + ")");
        }
        for (std::size_t c = 0; c < rows[r].fields.size(); ++c) {
            if (c == id_col || c == title_col || c == abstract_col) continue;
            doc.extra[rows[0].fields[c]] = rows[r].fields[c];
        }
        docs.push_back(std::move(doc));
    }
    return docs;
}

std::vector<TopicRecord> parse_topics(const std::string& path) {
    auto rows = parse_csv_file(path);
    if (rows.empty()) {
        throw SchemaError("topics file has no header row: " + path);
    }
    HeaderIndex header(rows[0]);
    const std::size_t id_col = header.require({"topic id"}, "topic-id");
    const std::size_t query_col = header.require({"query"}, "query");
    const std::size_t question_col = header.require({"question"}, "question");
    const std::size_t narrative_col = header.require({"narrative"}, "narrative");

    std::vector<TopicRecord> topics;
    std::unordered_set<int> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        check_width(rows[r], rows[0].fields.size());
        TopicRecord topic;
        topic.topic_id = parse_int_field(field_at(rows[r], id_col), "topic id", rows[r].line);
        if (topic.topic_id <= 0) {
            throw SchemaError("topic id must be positive, got " + std::to_string(topic.topic_id) +
                              " (line " + std::to_string(rows[r].line) + ")");
        }
        if (!seen.insert(topic.topic_id).second) {
            throw ValidationError("duplicate topic id " + std::to_string(topic.topic_id) +
                                  " (line " + std::to_string(rows[r].line) + ")");
        }
        topic.query = field_at(rows[r], query_col);
        topic.question = field_at(rows[r], question_col);
        topic.narrative = field_at(rows[r], narrative_col);
        topics.push_back(std::move(topic));
    }
    std::sort(topics.begin(), topics.end(),
              [](const TopicRecord& a, const TopicRecord& b) { return a.topic_id < b.topic_id; });
    return topics;
}

std::vector<JudgmentRecord> parse_qrels(const std::string& path) {
    auto rows = parse_csv_file(path);
    if (rows.empty()) {
        throw SchemaError("qrels file has no header row: " + path);
    }
    HeaderIndex header(rows[0]);
    const std::size_t topic_col = header.require({"topic id"}, "topic-id");
    const std::size_t iter_col = header.require({"iteration"}, "iteration");
    const std::size_t doc_col = header.require({"cord id", "cord uid"}, "cord-id");
    const std::size_t label_col = header.require({"judgement", "judgment"}, "judgement");

    std::vector<JudgmentRecord> judgments;
    std::unordered_map<int, std::unordered_set<std::string>> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        check_width(rows[r], rows[0].fields.size());
        JudgmentRecord j;
        j.topic_id = parse_int_field(field_at(rows[r], topic_col), "topic id", rows[r].line);
        j.iteration = field_at(rows[r], iter_col);
        j.doc_id = field_at(rows[r], doc_col);
        j.label = parse_int_field(field_at(rows[r], label_col), "judgement", rows[r].line);
        if (j.label < 0 || j.label > 2) {
            throw ValidationError("judgement label must be 0, 1 or 2, got " +
                                  std::to_string(j.label) + " (line " +
                                  std::to_string(rows[r].line) + ")");
        }
        if (!seen[j.topic_id].insert(j.doc_id).second) {
            throw ValidationError("duplicate judgment for topic " + std::to_string(j.topic_id) +
                                  ", document '" + j.doc_id + "' (line " +
                                  std::to_string(rows[r].line) + ")");
        }
        judgments.push_back(std::move(j));
    }
    return judgments;
}

DropResult drop_null_titles(std::vector<DocumentRecord> docs) {
    DropResult result;
    result.documents.reserve(docs.size());
    for (auto& doc : docs) {
        if (is_blank(doc.title)) {
            ++result.dropped;
        } else {
            result.documents.push_back(std::move(doc));
        }
    }
    return result;
}

DedupResult deduplicate_titles(std::vector<DocumentRecord> docs, const TitleKeyFn& key) {
    DedupResult result;

    std::vector<std::string> keys(docs.size());
    // winner per key = record with the smallest doc_id
    std::unordered_map<std::string, std::size_t> winner;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        keys[i] = key(docs[i].title);
        if (keys[i].empty()) continue;
        auto [it, inserted] = winner.try_emplace(keys[i], i);
        if (!inserted && docs[i].doc_id < docs[it->second].doc_id) {
            it->second = i;
        }
    }

    result.documents.reserve(winner.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (keys[i].empty()) {
            ++result.removed_empty_normalized;
        } else if (winner.at(keys[i]) == i) {
            result.documents.push_back(std::move(docs[i]));
        } else {
            ++result.removed_duplicates;
        }
    }
    return result;
}

AsciiFilterResult filter_non_ascii_titles(std::vector<DocumentRecord> docs) {
    AsciiFilterResult result;
    result.documents.reserve(docs.size());
    for (auto& doc : docs) {
        bool ascii = std::all_of(doc.title.begin(), doc.title.end(),
                                 [](unsigned char c) { return c <= 0x7F; });
        if (ascii) {
            result.documents.push_back(std::move(doc));
        } else {
            ++result.removed;
        }
    }
    return result;
}

DocIdDedupResult deduplicate_doc_ids(std::vector<DocumentRecord> docs) {
    DocIdDedupResult result;
    std::unordered_set<std::string> seen;
    result.documents.reserve(docs.size());
    for (auto& doc : docs) {
        if (seen.insert(doc.doc_id).second) {
            result.documents.push_back(std::move(doc));
        } else {
            ++result.removed;
        }
    }
    return result;
}

CleanResult clean_documents(std::vector<DocumentRecord> docs, const TitleKeyFn& key,
                            bool ascii_filter) {
    CleanResult result;
    result.counts.parsed = docs.size();

    auto unique_ids = deduplicate_doc_ids(std::move(docs));
    result.counts.removed_duplicate_ids = unique_ids.removed;

    auto dropped = drop_null_titles(std::move(unique_ids.documents));
    result.counts.dropped_null_titles = dropped.dropped;

    auto deduped = deduplicate_titles(std::move(dropped.documents), key);
    result.counts.removed_duplicate_titles = deduped.removed_duplicates;
    result.counts.removed_empty_normalized = deduped.removed_empty_normalized;

    if (ascii_filter) {
        auto filtered = filter_non_ascii_titles(std::move(deduped.documents));
        result.counts.removed_non_ascii = filtered.removed;
        result.documents = std::move(filtered.documents);
    } else {
        result.documents = std::move(deduped.documents);
    }
    result.counts.survivors = result.documents.size();
    return result;
}

namespace {

constexpr std::string_view kDocsTag = "DOCS";
constexpr std::string_view kTopicsTag = "TOPS";
constexpr std::string_view kQrelsTag = "QRLS";
constexpr std::string_view kProvTag = "PROV";

std::string encode_documents(const std::vector<DocumentRecord>& docs) {
    ByteWriter w;
    w.u64(docs.size());
    for (const auto& doc : docs) {
        w.str(doc.doc_id);
        w.str(doc.title);
        w.str(doc.abstract_text);
        w.string_map(doc.extra);
    }
    return w.take();
}

std::vector<DocumentRecord> decode_documents(std::string_view payload) {
    ByteReader r(payload);
    std::uint64_t count = r.u64();
    std::vector<DocumentRecord> docs;
    docs.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        DocumentRecord doc;
        doc.doc_id = r.str();
        doc.title = r.str();
        doc.abstract_text = r.str();
        doc.extra = r.string_map();
        docs.push_back(std::move(doc));
    }
    return docs;
}

std::string encode_topics(const std::vector<TopicRecord>& topics) {
    ByteWriter w;
    w.u64(topics.size());
    for (const auto& t : topics) {
        w.i32(t.topic_id);
        w.str(t.query);
        w.str(t.question);
        w.str(t.narrative);
    }
    return w.take();
}

std::vector<TopicRecord> decode_topics(std::string_view payload) {
    ByteReader r(payload);
    std::uint64_t count = r.u64();
    std::vector<TopicRecord> topics;
    topics.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        TopicRecord t;
        t.topic_id = r.i32();
        t.query = r.str();
        t.question = r.str();
        t.narrative = r.str();
        topics.push_back(std::move(t));
    }
    return topics;
}

std::string encode_qrels(const std::vector<JudgmentRecord>& judgments) {
    ByteWriter w;
    w.u64(judgments.size());
    for (const auto& j : judgments) {
        w.i32(j.topic_id);
        w.str(j.iteration);
        w.str(j.doc_id);
        w.i32(j.label);
    }
    return w.take();
}

std::vector<JudgmentRecord> decode_qrels(std::string_view payload) {
    ByteReader r(payload);
    std::uint64_t count = r.u64();
    std::vector<JudgmentRecord> judgments;
    judgments.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        JudgmentRecord j;
        j.topic_id = r.i32();
        j.iteration = r.str();
        j.doc_id = r.str();
        j.label = r.i32();
        judgments.push_back(std::move(j));
    }
    return judgments;
}

std::string encode_provenance(const Provenance& prov) {
    std::map<std::string, std::string> m;
    m["metadata_path"] = prov.metadata_path;
    m["topics_path"] = prov.topics_path;
    m["qrels_path"] = prov.qrels_path;
    m["config_hash"] = prov.config_hash;
    m["stopword_hash"] = prov.stopword_hash;
    m["parsed"] = std::to_string(prov.cleaning.parsed);
    m["dropped_null_titles"] = std::to_string(prov.cleaning.dropped_null_titles);
    m["removed_duplicate_ids"] = std::to_string(prov.cleaning.removed_duplicate_ids);
    m["removed_duplicate_titles"] = std::to_string(prov.cleaning.removed_duplicate_titles);
    m["removed_empty_normalized"] = std::to_string(prov.cleaning.removed_empty_normalized);
    m["removed_non_ascii"] = std::to_string(prov.cleaning.removed_non_ascii);
    m["survivors"] = std::to_string(prov.cleaning.survivors);
    ByteWriter w;
    w.string_map(m);
    return w.take();
}

std::uint64_t to_u64(const std::map<std::string, std::string>& m, const std::string& k) {
    auto it = m.find(k);
    return it == m.end() ? 0 : std::stoull(it->second);
}

Provenance decode_provenance(std::string_view payload) {
    ByteReader r(payload);
    auto m = r.string_map();
    Provenance prov;
    prov.metadata_path = m.count("metadata_path") ? m.at("metadata_path") : "";
    prov.topics_path = m.count("topics_path") ? m.at("topics_path") : "";
    prov.qrels_path = m.count("qrels_path") ? m.at("qrels_path") : "";
    prov.config_hash = m.count("config_hash") ? m.at("config_hash") : "";
    prov.stopword_hash = m.count("stopword_hash") ? m.at("stopword_hash") : "";
    prov.cleaning.parsed = to_u64(m, "parsed");
    prov.cleaning.dropped_null_titles = to_u64(m, "dropped_null_titles");
    prov.cleaning.removed_duplicate_ids = to_u64(m, "removed_duplicate_ids");
    prov.cleaning.removed_duplicate_titles = to_u64(m, "removed_duplicate_titles");
    prov.cleaning.removed_empty_normalized = to_u64(m, "removed_empty_normalized");
    prov.cleaning.removed_non_ascii = to_u64(m, "removed_non_ascii");
    prov.cleaning.survivors = to_u64(m, "survivors");
    return prov;
}

}  // namespace

void persist_store(const CorpusStore& store, const std::string& path) {
    ContainerWriter writer;
    writer.add_section(kDocsTag, encode_documents(store.documents));
    writer.add_section(kTopicsTag, encode_topics(store.topics));
    writer.add_section(kQrelsTag, encode_qrels(store.judgments));
    writer.add_section(kProvTag, encode_provenance(store.provenance));
    writer.write_file(path);
}

CorpusStore load_store(const std::string& path) {
    auto reader = ContainerReader::from_file(path);
    CorpusStore store;
    store.documents = decode_documents(reader.section(kDocsTag));
    store.topics = decode_topics(reader.section(kTopicsTag));
    store.judgments = decode_qrels(reader.section(kQrelsTag));
    store.provenance = decode_provenance(reader.section(kProvTag));
    return store;
}

}  // namespace corpusranker
