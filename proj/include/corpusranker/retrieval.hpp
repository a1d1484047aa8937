#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "corpusranker/embedding.hpp"
#include "corpusranker/records.hpp"
#include "corpusranker/similarity.hpp"

namespace corpusranker {

// The seven topic-field compositions that label report rows.
enum class TopicFieldCombo {
    query,
    question,
    narrative,
    query_question,
    query_narrative,
    question_narrative,
    query_question_narrative,
};

inline constexpr std::array<TopicFieldCombo, 7> kAllCombos = {
    TopicFieldCombo::query,
    TopicFieldCombo::question,
    TopicFieldCombo::narrative,
    TopicFieldCombo::query_question,
    TopicFieldCombo::query_narrative,
    TopicFieldCombo::question_narrative,
    TopicFieldCombo::query_question_narrative,
};

// Short name used by flags and filenames, e.g. "query+question".
const char* combo_name(TopicFieldCombo combo);
// Report row label, e.g. "Query Question Title".
const char* combo_report_label(TopicFieldCombo combo);
TopicFieldCombo combo_from_name(const std::string& name);

bool combo_has_query(TopicFieldCombo combo);
bool combo_has_question(TopicFieldCombo combo);
bool combo_has_narrative(TopicFieldCombo combo);

// Selected fields concatenated in fixed order query, question, narrative,
// joined by single spaces.
std::string compose_topic(const TopicRecord& topic, TopicFieldCombo combo);

struct RankedEntry {
    std::string doc_id;
    double score = 0.0;

    bool operator==(const RankedEntry&) const = default;
};

struct RankedList {
    int topic_id = 0;
    TopicFieldCombo combo = TopicFieldCombo::query;
    Measure measure = Measure::cosine;
    std::vector<RankedEntry> entries;  // best first
};

// k best titles of one score row: highest first for similarity, lowest first
// for distance, ties broken by ascending doc_id. k > n returns all n, fully
// sorted.
RankedList top_k(std::span<const double> scores, std::span<const std::string> doc_ids,
                 std::size_t k, Measure measure, int topic_id, TopicFieldCombo combo);

// Labeled matrix emitted as CSV (first row and first column carry labels).
struct LabeledMatrix {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<double> values;  // row-major

    double at(std::size_t r, std::size_t c) const { return values[r * col_labels.size() + c]; }
    bool empty() const { return row_labels.empty() || col_labels.empty(); }
};

// Rows = distinct tokens of title and topic (sorted), columns = {title,
// topic}, cells = token frequencies.
LabeledMatrix heatmap_bow(const TokenList& title, const TokenList& topic);

// Rows = title tokens, columns = topic tokens, cells = word-word cosine.
// Out-of-table tokens score 0 against everything.
LabeledMatrix heatmap_word_cosine(const TokenList& title, const TokenList& topic,
                                  const EmbeddingTable& table);

void write_labeled_matrix_csv(const LabeledMatrix& matrix, std::ostream& out);

// Fig-9-shaped ranked list CSV: topic-id, cord-id, combo-text, title, score.
void write_ranked_list_csv(const RankedList& list, const std::string& combo_text,
                           const std::vector<DocumentRecord>& documents, std::ostream& out);

}  // namespace corpusranker
