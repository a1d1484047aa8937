#include "corpusranker/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>

#include "corpusranker/csv.hpp"
#include "corpusranker/errors.hpp"

namespace corpusranker {

int binarize_label(int label) { return label == 0 ? 0 : 1; }

std::map<std::pair<int, std::string>, int> binarize_judgments(
    const std::vector<JudgmentRecord>& judgments) {
    std::map<std::pair<int, std::string>, int> out;
    for (const auto& j : judgments) {
        out[{j.topic_id, j.doc_id}] = binarize_label(j.label);
    }
    return out;
}

double auto_threshold(std::span<const double> scores) {
    if (scores.empty()) {
        throw ValidationError("auto threshold undefined: no scores");
    }
    auto [min_it, max_it] = std::minmax_element(scores.begin(), scores.end());
    return (*max_it + *min_it) / 2.0;
}

std::vector<int> classify_pairs(std::span<const double> scores, double threshold) {
    std::vector<int> out;
    out.reserve(scores.size());
    for (double s : scores) out.push_back(s >= threshold ? 1 : 0);
    return out;
}

ConfusionMatrix confusion(std::span<const int> predictions, std::span<const int> truths) {
    if (predictions.size() != truths.size()) {
        throw ContractViolation("confusion: prediction/truth length mismatch");
    }
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (truths[i] == 1) {
            predictions[i] == 1 ? ++cm.tp : ++cm.fn;
        } else {
            predictions[i] == 1 ? ++cm.fp : ++cm.tn;
        }
    }
    return cm;
}

Metrics compute_metrics(const ConfusionMatrix& cm) {
    Metrics m;
    // integer sums, one division each
    if (cm.total() > 0) {
        m.accuracy = {true, static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total())};
    }
    if (cm.tp + cm.fp > 0) {
        m.precision = {true, static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp)};
    }
    if (cm.tp + cm.fn > 0) {
        m.recall = {true, static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn)};
    }
    if (m.precision.defined && m.recall.defined && (m.precision.value + m.recall.value) > 0.0) {
        m.f1 = {true, 2.0 * m.precision.value * m.recall.value /
                          (m.precision.value + m.recall.value)};
    }
    return m;
}

EvalReport evaluate_run(const std::string& model_name, const std::vector<std::string>& doc_ids,
                        const std::vector<int>& topic_ids,
                        const std::vector<std::pair<TopicFieldCombo, ScoreMatrix>>& combo_scores,
                        const std::vector<JudgmentRecord>& judgments,
                        const ThresholdPolicy& policy) {
    EvalReport report;
    report.model_name = model_name;

    std::unordered_map<std::string, std::size_t> doc_index;
    doc_index.reserve(doc_ids.size());
    for (std::size_t i = 0; i < doc_ids.size(); ++i) doc_index[doc_ids[i]] = i;

    std::unordered_map<int, std::size_t> topic_index;
    topic_index.reserve(topic_ids.size());
    for (std::size_t i = 0; i < topic_ids.size(); ++i) topic_index[topic_ids[i]] = i;

    // Judged pairs that survived cleaning, resolved to matrix coordinates.
    struct Pair {
        std::size_t row;
        std::size_t col;
        int truth;
    };
    std::vector<Pair> pairs;
    pairs.reserve(judgments.size());
    std::uint64_t missing = 0;
    for (const auto& j : judgments) {
        auto doc_it = doc_index.find(j.doc_id);
        auto topic_it = topic_index.find(j.topic_id);
        if (doc_it == doc_index.end() || topic_it == topic_index.end()) {
            ++missing;
            continue;
        }
        pairs.push_back(Pair{topic_it->second, doc_it->second, binarize_label(j.label)});
    }
    report.judged_pairs_missing = missing;

    for (const auto& [combo, matrix] : combo_scores) {
        ComboEvaluation row;
        row.combo = combo;
        row.judged_pairs = pairs.size();
        if (pairs.empty()) {
            row.empty = true;
            report.rows.push_back(row);
            continue;
        }

        std::vector<double> scores;
        std::vector<int> truths;
        scores.reserve(pairs.size());
        truths.reserve(pairs.size());
        for (const auto& p : pairs) {
            scores.push_back(matrix.at(p.row, p.col));
            truths.push_back(p.truth);
        }

        row.threshold = policy.mode == ThresholdPolicy::Mode::fixed ? policy.fixed_value
                                                                    : auto_threshold(scores);
        auto predictions = classify_pairs(scores, row.threshold);
        row.cm = confusion(predictions, truths);
        row.metrics = compute_metrics(row.cm);
        report.rows.push_back(row);
    }
    return report;
}

namespace {

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string metric_cell(const MetricValue& m) {
    return m.defined ? format_value(m.value) : "undefined";
}

}  // namespace

void write_eval_report_csv(const EvalReport& report, std::ostream& out) {
    write_csv_row(out, {"combo", "threshold", "tp", "fp", "tn", "fn", "accuracy", "precision",
                        "recall", "f1"});
    for (const auto& row : report.rows) {
        if (row.empty) {
            write_csv_row(out, {combo_report_label(row.combo), "", "0", "0", "0", "0", "empty",
                                "empty", "empty", "empty"});
            continue;
        }
        write_csv_row(out, {combo_report_label(row.combo), format_value(row.threshold),
                            std::to_string(row.cm.tp), std::to_string(row.cm.fp),
                            std::to_string(row.cm.tn), std::to_string(row.cm.fn),
                            metric_cell(row.metrics.accuracy), metric_cell(row.metrics.precision),
                            metric_cell(row.metrics.recall), metric_cell(row.metrics.f1)});
    }
}

std::vector<TopKPrecisionRow> topk_precision(
    const std::vector<std::string>& doc_ids, const std::vector<int>& topic_ids,
    const std::vector<std::pair<TopicFieldCombo, ScoreMatrix>>& combo_scores,
    const std::vector<JudgmentRecord>& judgments, std::size_t k, Measure measure) {
    auto truth = binarize_judgments(judgments);

    std::vector<TopKPrecisionRow> rows;
    for (const auto& [combo, matrix] : combo_scores) {
        TopKPrecisionRow row;
        row.combo = combo;
        row.k = k;
        double sum = 0.0;
        for (std::size_t r = 0; r < matrix.rows; ++r) {
            auto scores = matrix.row(r);
            auto ranked = top_k(scores, doc_ids, k, measure, topic_ids[r], combo);
            if (ranked.entries.empty()) continue;
            std::size_t hits = 0;
            for (const auto& entry : ranked.entries) {
                auto it = truth.find({topic_ids[r], entry.doc_id});
                if (it != truth.end() && it->second == 1) ++hits;
            }
            sum += static_cast<double>(hits) / static_cast<double>(ranked.entries.size());
            ++row.topics_counted;
        }
        row.mean_precision = row.topics_counted ? sum / static_cast<double>(row.topics_counted) : 0.0;
        rows.push_back(row);
    }
    return rows;
}

void write_topk_precision_csv(const std::vector<TopKPrecisionRow>& rows, std::ostream& out) {
    write_csv_row(out, {"combo", "k", "mean_topk_precision", "topics"});
    for (const auto& row : rows) {
        write_csv_row(out, {combo_report_label(row.combo), std::to_string(row.k),
                            format_value(row.mean_precision), std::to_string(row.topics_counted)});
    }
}

}  // namespace corpusranker
