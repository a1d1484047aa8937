#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corpusranker/records.hpp"
#include "corpusranker/retrieval.hpp"
#include "corpusranker/similarity.hpp"

namespace corpusranker {

struct ThresholdPolicy {
    enum class Mode { fixed, automatic };

    Mode mode = Mode::automatic;
    double fixed_value = 0.0;  // used when mode == fixed
};

// Graded label -> binary relevance: 0 -> 0, 1 -> 1, 2 -> 1.
int binarize_label(int label);
std::map<std::pair<int, std::string>, int> binarize_judgments(
    const std::vector<JudgmentRecord>& judgments);

// Midpoint of the score range: (max + min) / 2. Empty input raises
// ValidationError.
double auto_threshold(std::span<const double> scores);

// prediction 1 iff score >= threshold (inclusive boundary)
std::vector<int> classify_pairs(std::span<const double> scores, double threshold);

struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + fp + tn + fn; }

    bool operator==(const ConfusionMatrix&) const = default;
};

ConfusionMatrix confusion(std::span<const int> predictions, std::span<const int> truths);

// A metric whose denominator can vanish carries an explicit undefined flag;
// reports render it as "undefined" instead of a silent zero.
struct MetricValue {
    bool defined = false;
    double value = 0.0;
};

struct Metrics {
    MetricValue accuracy;
    MetricValue precision;
    MetricValue recall;
    MetricValue f1;
};

Metrics compute_metrics(const ConfusionMatrix& cm);

struct ComboEvaluation {
    TopicFieldCombo combo = TopicFieldCombo::query;
    double threshold = 0.0;
    bool empty = false;  // no judged pairs reached this combo
    std::uint64_t judged_pairs = 0;
    ConfusionMatrix cm;
    Metrics metrics;
};

struct EvalReport {
    std::string model_name;
    std::vector<ComboEvaluation> rows;
    std::uint64_t judged_pairs_missing = 0;  // judgments whose doc was cleaned away
    std::string config_hash;
    std::uint64_t seed = 0;
};

// Thresholds and classifies the judged pairs of every combo. doc_ids label
// the matrix columns, topic_ids the rows; all combos share both orderings.
// The automatic policy computes (max+min)/2 over each combo's judged-pair
// scores.
EvalReport evaluate_run(const std::string& model_name, const std::vector<std::string>& doc_ids,
                        const std::vector<int>& topic_ids,
                        const std::vector<std::pair<TopicFieldCombo, ScoreMatrix>>& combo_scores,
                        const std::vector<JudgmentRecord>& judgments,
                        const ThresholdPolicy& policy);

// CSV: combo, threshold, tp, fp, tn, fn, accuracy, precision, recall, f1.
// Combo labels follow the report row naming ("Query Title", ...).
void write_eval_report_csv(const EvalReport& report, std::ostream& out);

// Supplementary diagnostic: mean precision of the top-k titles per combo,
// judged-relevant docs counting as hits.
struct TopKPrecisionRow {
    TopicFieldCombo combo = TopicFieldCombo::query;
    std::size_t k = 0;
    double mean_precision = 0.0;
    std::uint64_t topics_counted = 0;
};

std::vector<TopKPrecisionRow> topk_precision(
    const std::vector<std::string>& doc_ids, const std::vector<int>& topic_ids,
    const std::vector<std::pair<TopicFieldCombo, ScoreMatrix>>& combo_scores,
    const std::vector<JudgmentRecord>& judgments, std::size_t k, Measure measure);

void write_topk_precision_csv(const std::vector<TopKPrecisionRow>& rows, std::ostream& out);

}  // namespace corpusranker
