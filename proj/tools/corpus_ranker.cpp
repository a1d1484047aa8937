#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "corpusranker/errors.hpp"
#include "corpusranker/pipeline.hpp"

namespace {

using namespace corpusranker;

struct CliState {
    RunConfig cfg;
    std::string model = "bow";
    std::string reducer;
    std::string measure = "cosine";
    std::string architecture = "skipgram";
    std::string combos;  // comma separated
    double fixed_threshold = 0.0;
    bool threshold_given = false;
    std::string config_path;

    // query
    int topic_id = 0;
    bool topic_given = false;
    std::string free_text;
    bool text_given = false;
    std::string query_combo = "query";

    // heatmap
    std::string heatmap_kind = "bow";
    std::string heatmap_doc;
    int heatmap_topic = 0;
    std::string heatmap_combo = "query";
};

// Maps a flat config key to the CLI option it mirrors; values apply only when
// the flag was not given, so flags > config file > defaults.
struct ConfigBinding {
    CLI::Option* option = nullptr;
    std::function<void(const std::string&)> apply;
};

using ConfigBindings = std::map<std::string, ConfigBinding>;

template <typename T>
void assign_from_string(T& target, const std::string& value, const std::string& key) {
    std::istringstream in(value);
    T parsed{};
    if (!(in >> parsed) || !(in >> std::ws).eof()) {
        throw ConfigError("config key '" + key + "' has invalid value '" + value + "'");
    }
    target = parsed;
}

void assign_from_string(std::string& target, const std::string& value, const std::string&) {
    target = value;
}

void assign_from_string(bool& target, const std::string& value, const std::string& key) {
    if (value == "1" || value == "true" || value == "yes" || value == "on") {
        target = true;
    } else if (value == "0" || value == "false" || value == "no" || value == "off") {
        target = false;
    } else {
        throw ConfigError("config key '" + key + "' expects a boolean, got '" + value + "'");
    }
}

template <typename T>
CLI::Option* bind_option(CLI::App* cmd, ConfigBindings& bindings, const std::string& flag,
                         const std::string& key, T& target, const std::string& desc) {
    CLI::Option* opt = cmd->add_option(flag, target, desc);
    bindings[key] = {opt, [&target, key](const std::string& v) {
                         assign_from_string(target, v, key);
                     }};
    return opt;
}

CLI::Option* bind_flag(CLI::App* cmd, ConfigBindings& bindings, const std::string& flag,
                       const std::string& key, bool& target, const std::string& desc) {
    CLI::Option* opt = cmd->add_flag(flag, target, desc);
    bindings[key] = {opt, [&target, key](const std::string& v) {
                         assign_from_string(target, v, key);
                     }};
    return opt;
}

// Flat key=value file, '#' comments, blank lines allowed.
std::map<std::string, std::string> parse_flat_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open config file: " + path);
    }
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        auto end = line.find_last_not_of(" \t");
        line = line.substr(begin, end - begin + 1);
        auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              " is not key=value: " + path);
        }
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t");
            s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
        };
        trim(key);
        trim(value);
        out[key] = value;
    }
    return out;
}

struct SubcommandState {
    CLI::App* app = nullptr;
    ConfigBindings bindings;
    CLI::Option* reducer_opt = nullptr;
    CLI::Option* threshold_opt = nullptr;
};

void add_common_options(SubcommandState& sub, CliState& state) {
    sub.app
        ->add_option("--workdir", state.cfg.workdir, "Working directory for artifacts")
        ->envname("CORPUS_RANKER_WORKDIR");
    sub.bindings["workdir"] = {sub.app->get_option("--workdir"),
                               [&state](const std::string& v) { state.cfg.workdir = v; }};
    bind_option(sub.app, sub.bindings, "--stopwords", "stopwords", state.cfg.stopword_path,
                "Stopword file (one token per line, '#' comments); builtin list when omitted");
    bind_option(sub.app, sub.bindings, "--lemma-dict", "lemma-dict", state.cfg.lemma_path,
                "Lemma dictionary file (inflected<TAB>lemma); builtin table when omitted");
    sub.reducer_opt = bind_option(sub.app, sub.bindings, "--reducer", "reducer", state.reducer,
                                  "Token reducer: none, porter or lemmatize");
    sub.reducer_opt->check(CLI::IsMember({"none", "porter", "lemmatize"}));
    sub.app->add_flag("--ascii-filter,!--no-ascii-filter", state.cfg.ascii_filter,
                      "Drop titles containing non-ASCII bytes (default on)");
    sub.bindings["ascii-filter"] = {sub.app->get_option("--ascii-filter"),
                                    [&state](const std::string& v) {
                                        assign_from_string(state.cfg.ascii_filter, v,
                                                           "ascii-filter");
                                    }};
    bind_option(sub.app, sub.bindings, "--seed", "seed", state.cfg.seed,
                "RNG seed for reproducible runs");
    bind_option(sub.app, sub.bindings, "--threads", "threads", state.cfg.threads,
                "Worker threads; 1 guarantees bit-reproducible output");
    sub.app->add_option("--config", state.config_path,
                        "Flat key=value config file; flags take precedence");
}

void add_model_option(SubcommandState& sub, CliState& state) {
    bind_option(sub.app, sub.bindings, "--model", "model", state.model,
                "Text model: bow, tfidf, w2v-avg, w2v-tfidf or ext-avg")
        ->check(CLI::IsMember({"bow", "tfidf", "w2v-avg", "w2v-tfidf", "ext-avg"}));
}

void apply_config_file(SubcommandState& sub, CliState& state) {
    if (state.config_path.empty()) return;
    auto values = parse_flat_config(state.config_path);
    for (const auto& [key, value] : values) {
        auto it = sub.bindings.find(key);
        if (it == sub.bindings.end()) {
            continue;  // keys for other subcommands are fine in a shared file
        }
        if (it->second.option != nullptr && it->second.option->count() > 0) {
            continue;  // flag wins
        }
        it->second.apply(value);
        if (key == "threshold") state.threshold_given = true;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"corpus-ranker: title retrieval and evaluation over a research-paper corpus"};
    app.require_subcommand(1);

    CliState state;

    SubcommandState ingest;
    ingest.app = app.add_subcommand("ingest", "Parse and clean the corpus into a binary store");
    bind_option(ingest.app, ingest.bindings, "--metadata", "metadata", state.cfg.metadata_path,
                "metadata CSV");
    bind_option(ingest.app, ingest.bindings, "--topics", "topics", state.cfg.topics_path,
                "topics CSV");
    bind_option(ingest.app, ingest.bindings, "--qrels", "qrels", state.cfg.qrels_path,
                "qrels CSV");
    add_common_options(ingest, state);

    SubcommandState index;
    index.app = app.add_subcommand("index", "Build model artifacts from the store");
    add_model_option(index, state);
    bind_option(index.app, index.bindings, "--dim", "dim", state.cfg.train.dimension,
                "Embedding dimension");
    bind_option(index.app, index.bindings, "--arch", "arch", state.architecture,
                "word2vec architecture: cbow or skipgram")
        ->check(CLI::IsMember({"cbow", "skipgram"}));
    bind_option(index.app, index.bindings, "--window", "window", state.cfg.train.window,
                "Context window size");
    bind_option(index.app, index.bindings, "--negative", "negative",
                state.cfg.train.negative_samples, "Negative samples per pair");
    bind_option(index.app, index.bindings, "--epochs", "epochs", state.cfg.train.epochs,
                "Training epochs");
    bind_option(index.app, index.bindings, "--lr", "lr", state.cfg.train.initial_learning_rate,
                "Initial learning rate");
    bind_option(index.app, index.bindings, "--min-lr", "min-lr",
                state.cfg.train.min_learning_rate, "Learning rate floor");
    bind_option(index.app, index.bindings, "--min-count", "min-count", state.cfg.train.min_count,
                "Minimum token frequency");
    bind_option(index.app, index.bindings, "--embedding", "embedding", state.cfg.embedding_path,
                "External embedding file (ext-avg model)");
    bind_flag(index.app, index.bindings, "--pool-count-oov", "pool-count-oov",
              state.cfg.pooling.count_oov_in_denominator,
              "Count out-of-table tokens in pooling denominators");
    bind_flag(index.app, index.bindings, "--pool-weight-sum", "pool-weight-sum",
              state.cfg.pooling.normalize_by_weight_sum,
              "Normalize TF-IDF-weighted pooling by the weight sum");
    add_common_options(index, state);

    SubcommandState query;
    query.app = app.add_subcommand("query", "Rank titles for one topic or free text");
    add_model_option(query, state);
    auto* topic_opt = query.app->add_option("--topic", state.topic_id, "Topic id");
    auto* text_opt = query.app->add_option("--text", state.free_text, "Free-text query");
    bind_option(query.app, query.bindings, "--combo", "combo", state.query_combo,
                "Topic field combination")
        ->check(CLI::IsMember({"query", "question", "narrative", "query+question",
                               "query+narrative", "question+narrative",
                               "query+question+narrative"}));
    bind_option(query.app, query.bindings, "--k", "k", state.cfg.k,
                "Number of titles to return");
    bind_option(query.app, query.bindings, "--measure", "measure", state.measure,
                "Similarity measure: cosine or euclidean")
        ->check(CLI::IsMember({"cosine", "euclidean"}));
    add_common_options(query, state);

    SubcommandState evaluate;
    evaluate.app = app.add_subcommand("evaluate", "Score judged pairs and report metrics");
    add_model_option(evaluate, state);
    bind_option(evaluate.app, evaluate.bindings, "--combos", "combos", state.combos,
                "Topic field combinations, comma separated (default: all seven)");
    evaluate.threshold_opt =
        bind_option(evaluate.app, evaluate.bindings, "--threshold", "threshold",
                    state.fixed_threshold,
                    "Fixed decision threshold; omit for (max+min)/2 auto mode");
    bind_option(evaluate.app, evaluate.bindings, "--k", "k", state.cfg.k,
                "k for the top-k precision diagnostic");
    bind_option(evaluate.app, evaluate.bindings, "--measure", "measure", state.measure,
                "Similarity measure: cosine or euclidean")
        ->check(CLI::IsMember({"cosine", "euclidean"}));
    add_common_options(evaluate, state);

    SubcommandState heatmap;
    heatmap.app = app.add_subcommand("heatmap", "Emit a labeled topic/title matrix CSV");
    add_model_option(heatmap, state);
    heatmap.app->add_option("--topic", state.heatmap_topic, "Topic id")->required();
    heatmap.app->add_option("--doc", state.heatmap_doc, "Document id")->required();
    bind_option(heatmap.app, heatmap.bindings, "--kind", "kind", state.heatmap_kind,
                "Matrix kind: bow or embedding")
        ->check(CLI::IsMember({"bow", "embedding"}));
    bind_option(heatmap.app, heatmap.bindings, "--combo", "combo", state.heatmap_combo,
                "Topic field combination")
        ->check(CLI::IsMember({"query", "question", "narrative", "query+question",
                               "query+narrative", "question+narrative",
                               "query+question+narrative"}));
    add_common_options(heatmap, state);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(ErrorKind::config);
    }

    try {
        SubcommandState* active = nullptr;
        for (SubcommandState* s : {&ingest, &index, &query, &evaluate, &heatmap}) {
            if (s->app->parsed()) active = s;
        }

        state.topic_given = topic_opt->count() > 0;
        state.text_given = text_opt->count() > 0;
        state.threshold_given = evaluate.threshold_opt && evaluate.threshold_opt->count() > 0;

        apply_config_file(*active, state);

        state.cfg.model = model_from_name(state.model);
        state.cfg.measure = measure_from_name(state.measure);
        state.cfg.train.architecture = architecture_from_name(state.architecture);
        if (!state.reducer.empty()) {
            state.cfg.reducer = reducer_from_name(state.reducer);
            state.cfg.reducer_explicit = true;
        }
        if (state.threshold_given) {
            state.cfg.threshold.mode = ThresholdPolicy::Mode::fixed;
            state.cfg.threshold.fixed_value = state.fixed_threshold;
        }
        if (!state.combos.empty()) {
            state.cfg.combos.clear();
            std::istringstream in(state.combos);
            std::string name;
            while (std::getline(in, name, ',')) {
                if (!name.empty()) state.cfg.combos.push_back(combo_from_name(name));
            }
            if (state.cfg.combos.empty()) {
                throw ConfigError("--combos must name at least one combination");
            }
        }
        state.cfg.train.seed = state.cfg.seed;
        state.cfg.train.threads = state.cfg.threads;

        if (ingest.app->parsed()) {
            if (state.cfg.metadata_path.empty() || state.cfg.topics_path.empty() ||
                state.cfg.qrels_path.empty()) {
                throw ConfigError("ingest requires --metadata, --topics and --qrels");
            }
            run_ingest(state.cfg, std::cout);
        } else if (index.app->parsed()) {
            run_index(state.cfg, std::cout);
        } else if (query.app->parsed()) {
            QueryRequest request;
            if (state.topic_given) request.topic_id = state.topic_id;
            if (state.text_given) request.free_text = state.free_text;
            request.combo = combo_from_name(state.query_combo);
            run_query(state.cfg, request, std::cout);
        } else if (evaluate.app->parsed()) {
            run_evaluate(state.cfg, std::cout);
        } else if (heatmap.app->parsed()) {
            HeatmapRequest request;
            request.topic_id = state.heatmap_topic;
            request.doc_id = state.heatmap_doc;
            request.kind = state.heatmap_kind == "bow" ? HeatmapKind::bow : HeatmapKind::embedding;
            request.combo = combo_from_name(state.heatmap_combo);
            run_heatmap(state.cfg, request, std::cout);
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
