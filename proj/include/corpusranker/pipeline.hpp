#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "corpusranker/evaluation.hpp"
#include "corpusranker/preprocess.hpp"
#include "corpusranker/retrieval.hpp"
#include "corpusranker/similarity.hpp"
#include "corpusranker/word2vec.hpp"

namespace corpusranker {

enum class ModelKind { bow, tfidf, w2v_avg, w2v_tfidf, ext_avg };

const char* model_name(ModelKind m);
ModelKind model_from_name(const std::string& name);

// Everything a subcommand needs; the CLI fills this from flags, config file
// and defaults (in that precedence order).
struct RunConfig {
    std::string metadata_path;
    std::string topics_path;
    std::string qrels_path;
    std::string workdir = "work";

    std::string stopword_path;  // empty -> builtin list
    std::string lemma_path;     // empty -> builtin exceptions
    Reducer reducer = Reducer::none;
    bool reducer_explicit = false;  // when false, the model picks its default
    bool ascii_filter = true;

    ModelKind model = ModelKind::bow;
    TrainConfig train;
    std::string embedding_path;  // required by ext-avg
    PoolingOptions pooling;

    Measure measure = Measure::cosine;
    std::vector<TopicFieldCombo> combos{kAllCombos.begin(), kAllCombos.end()};
    std::size_t k = 20;
    ThresholdPolicy threshold;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

std::string store_path(const RunConfig& cfg);
std::string index_path(const RunConfig& cfg);

// Builds the preprocess configuration the pipeline will use: stopwords from
// file or builtin, and the model-dependent reducer default (lemmatize for
// frequency models, none for embedding models) unless the reducer was set
// explicitly.
PreprocessConfig make_preprocess_config(const RunConfig& cfg);

// Hash of every setting that influences the command's output.
std::string config_hash(const RunConfig& cfg);

// ingest: parse the three CSVs, clean (doc-id dedup, null-title drop,
// normalized-title dedup, ASCII filter), persist the store, print the
// cleaning report.
CleaningCounts run_ingest(const RunConfig& cfg, std::ostream& log);

// index: preprocess, build the model artifacts, persist them.
void run_index(const RunConfig& cfg, std::ostream& log);

struct QueryRequest {
    std::optional<int> topic_id;
    std::optional<std::string> free_text;
    TopicFieldCombo combo = TopicFieldCombo::query;
};

// query: rank every title against one topic (or free text); prints the top-k
// list and writes the Fig-9-shaped CSV. Returns the ranked list.
RankedList run_query(const RunConfig& cfg, const QueryRequest& request, std::ostream& log);

// evaluate: threshold scores over the judged pairs per combo, write the
// report CSV (plus the top-k precision diagnostic).
EvalReport run_evaluate(const RunConfig& cfg, std::ostream& log);

enum class HeatmapKind { bow, embedding };

struct HeatmapRequest {
    int topic_id = 0;
    std::string doc_id;
    HeatmapKind kind = HeatmapKind::bow;
    TopicFieldCombo combo = TopicFieldCombo::query;
};

// heatmap: emit the labeled word-overlap (bow) or word-word cosine
// (embedding) matrix for one topic/title pair.
void run_heatmap(const RunConfig& cfg, const HeatmapRequest& request, std::ostream& log);

}  // namespace corpusranker
