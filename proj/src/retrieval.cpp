#include "corpusranker/retrieval.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <unordered_map>

#include "corpusranker/csv.hpp"
#include "corpusranker/errors.hpp"

namespace corpusranker {

const char* combo_name(TopicFieldCombo combo) {
    switch (combo) {
        case TopicFieldCombo::query: return "query";
        case TopicFieldCombo::question: return "question";
        case TopicFieldCombo::narrative: return "narrative";
        case TopicFieldCombo::query_question: return "query+question";
        case TopicFieldCombo::query_narrative: return "query+narrative";
        case TopicFieldCombo::question_narrative: return "question+narrative";
        case TopicFieldCombo::query_question_narrative: return "query+question+narrative";
    }
    return "query";
}

const char* combo_report_label(TopicFieldCombo combo) {
    switch (combo) {
        case TopicFieldCombo::query: return "Query Title";
        case TopicFieldCombo::question: return "Question Title";
        case TopicFieldCombo::narrative: return "Narrative Title";
        case TopicFieldCombo::query_question: return "Query Question Title";
        case TopicFieldCombo::query_narrative: return "Query Narrative Title";
        case TopicFieldCombo::question_narrative: return "Question Narrative Title";
        case TopicFieldCombo::query_question_narrative: return "Query Question Narrative Title";
    }
    return "Query Title";
}

TopicFieldCombo combo_from_name(const std::string& name) {
    for (TopicFieldCombo combo : kAllCombos) {
        if (name == combo_name(combo)) return combo;
    }
    throw ConfigError("unknown topic-field combo '" + name + "'");
}

bool combo_has_query(TopicFieldCombo combo) {
    return combo == TopicFieldCombo::query || combo == TopicFieldCombo::query_question ||
           combo == TopicFieldCombo::query_narrative ||
           combo == TopicFieldCombo::query_question_narrative;
}

bool combo_has_question(TopicFieldCombo combo) {
    return combo == TopicFieldCombo::question || combo == TopicFieldCombo::query_question ||
           combo == TopicFieldCombo::question_narrative ||
           combo == TopicFieldCombo::query_question_narrative;
}

bool combo_has_narrative(TopicFieldCombo combo) {
    return combo == TopicFieldCombo::narrative || combo == TopicFieldCombo::query_narrative ||
           combo == TopicFieldCombo::question_narrative ||
           combo == TopicFieldCombo::query_question_narrative;
}

std::string compose_topic(const TopicRecord& topic, TopicFieldCombo combo) {
    std::string out;
    auto append = [&out](const std::string& field) {
        if (!out.empty() && !field.empty()) out.push_back(' ');
        out += field;
    };
    if (combo_has_query(combo)) append(topic.query);
    if (combo_has_question(combo)) append(topic.question);
    if (combo_has_narrative(combo)) append(topic.narrative);
    return out;
}

RankedList top_k(std::span<const double> scores, std::span<const std::string> doc_ids,
                 std::size_t k, Measure measure, int topic_id, TopicFieldCombo combo) {
    if (scores.size() != doc_ids.size()) {
        throw ContractViolation("top_k: score row and doc id list differ in length");
    }
    if (k == 0) {
        throw ContractViolation("top_k: k must be >= 1");
    }

    std::vector<std::uint32_t> order(scores.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::uint32_t>(i);

    const bool distance = measure_is_distance(measure);
    auto better = [&](std::uint32_t a, std::uint32_t b) {
        if (scores[a] != scores[b]) {
            return distance ? scores[a] < scores[b] : scores[a] > scores[b];
        }
        return doc_ids[a] < doc_ids[b];
    };

    std::size_t take = std::min(k, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take),
                      order.end(), better);

    RankedList out;
    out.topic_id = topic_id;
    out.combo = combo;
    out.measure = measure;
    out.entries.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
        out.entries.push_back(RankedEntry{doc_ids[order[i]], scores[order[i]]});
    }
    return out;
}

LabeledMatrix heatmap_bow(const TokenList& title, const TokenList& topic) {
    LabeledMatrix out;
    if (title.empty() && topic.empty()) return out;

    std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> counts;
    for (const auto& tok : title.tokens) ++counts[tok].first;
    for (const auto& tok : topic.tokens) ++counts[tok].second;

    out.col_labels = {"title", "topic"};
    out.row_labels.reserve(counts.size());
    out.values.reserve(counts.size() * 2);
    for (const auto& [tok, pair] : counts) {
        out.row_labels.push_back(tok);
        out.values.push_back(static_cast<double>(pair.first));
        out.values.push_back(static_cast<double>(pair.second));
    }
    return out;
}

LabeledMatrix heatmap_word_cosine(const TokenList& title, const TokenList& topic,
                                  const EmbeddingTable& table) {
    LabeledMatrix out;
    if (title.empty() || topic.empty()) return out;

    out.row_labels = title.tokens;
    out.col_labels = topic.tokens;
    out.values.reserve(title.size() * topic.size());

    const DenseVector zero(table.dimension(), 0.0);
    auto vec_of = [&](const std::string& tok) -> DenseVector {
        if (!table.contains(tok)) return zero;
        auto v = table.vector_of(tok);
        return DenseVector(v.begin(), v.end());
    };

    std::unordered_map<std::string, DenseVector> cache;
    for (const auto& tok : title.tokens) cache.try_emplace(tok, vec_of(tok));
    for (const auto& tok : topic.tokens) cache.try_emplace(tok, vec_of(tok));

    for (const auto& row_tok : title.tokens) {
        const auto& rv = cache.at(row_tok);
        for (const auto& col_tok : topic.tokens) {
            out.values.push_back(cosine_similarity(rv, cache.at(col_tok)));
        }
    }
    return out;
}

namespace {

std::string format_score(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

void write_labeled_matrix_csv(const LabeledMatrix& matrix, std::ostream& out) {
    std::vector<std::string> header;
    header.reserve(matrix.col_labels.size() + 1);
    header.push_back("");
    for (const auto& c : matrix.col_labels) header.push_back(c);
    write_csv_row(out, header);

    for (std::size_t r = 0; r < matrix.row_labels.size(); ++r) {
        std::vector<std::string> row;
        row.reserve(matrix.col_labels.size() + 1);
        row.push_back(matrix.row_labels[r]);
        for (std::size_t c = 0; c < matrix.col_labels.size(); ++c) {
            row.push_back(format_score(matrix.at(r, c)));
        }
        write_csv_row(out, row);
    }
}

void write_ranked_list_csv(const RankedList& list, const std::string& combo_text,
                           const std::vector<DocumentRecord>& documents, std::ostream& out) {
    std::unordered_map<std::string, const DocumentRecord*> by_id;
    by_id.reserve(documents.size());
    for (const auto& doc : documents) by_id.emplace(doc.doc_id, &doc);

    write_csv_row(out, {"topic-id", "cord-id", "combo-text", "title", "score"});
    for (const auto& entry : list.entries) {
        auto it = by_id.find(entry.doc_id);
        const std::string title = it == by_id.end() ? "" : it->second->title;
        write_csv_row(out, {std::to_string(list.topic_id), entry.doc_id, combo_text, title,
                            format_score(entry.score)});
    }
}

}  // namespace corpusranker
